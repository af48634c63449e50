/*
 * Copyright 2026 The scaletwin Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SCALETWIN_SLAM_MULTIRES_GRID_H_
#define SCALETWIN_SLAM_MULTIRES_GRID_H_

#include <optional>
#include <vector>

#include "scaletwin/geometry.h"
#include "scaletwin/world/lidar.h"
#include "scaletwin/world/occupancy_grid.h"

namespace scaletwin::slam {

struct MapConfig {
  double resolution = 0.05;  // finest level, m/cell
  int levels = 3;
  double width_m = 20.0;
  double height_m = 20.0;
  double log_odds_occupied = 0.9;
  double log_odds_free = -0.4;
  double log_odds_min = -4.0;
  double log_odds_max = 4.0;
};

// Map pyramid. Level k has resolution r0 * 2^k and ceil(n / 2) the cells of
// level k - 1 per axis; all levels share one origin.
class MultiResGrid {
 public:
  MultiResGrid(const MapConfig& config, Pose2D origin);

  // Fixed-extent pyramid whose finest level has `center` at the middle of a
  // cell.
  static MultiResGrid CenteredOn(const MapConfig& config, Vec2 center);

  int num_levels() const { return static_cast<int>(levels_.size()); }
  const world::OccupancyGrid& level(int k) const { return levels_.at(k); }
  world::OccupancyGrid& mutable_level(int k) { return levels_.at(k); }
  const world::OccupancyGrid& finest() const { return levels_.front(); }
  const MapConfig& config() const { return config_; }

 private:
  MapConfig config_;
  std::vector<world::OccupancyGrid> levels_;
};

struct MapSample {
  double value = 0.0;  // interpolated occupancy probability
  Vec2 gradient;       // d value / d world position, 1/m
};

// Bilinear interpolation of cell-center occupancy probabilities, with the
// analytic gradient of that interpolant. nullopt when `point` is not inside
// the rectangle spanned by the outermost cell centers.
std::optional<MapSample> TryInterpolateMap(const world::OccupancyGrid& grid,
                                           Vec2 point);
// Throws Error(kOutOfGrid).
MapSample InterpolateMap(const world::OccupancyGrid& grid, Vec2 point);

// Grid cells visited by the integer Bresenham line from `from` to `to`,
// both endpoints included.
std::vector<world::CellIndex> BresenhamLine(world::CellIndex from,
                                            world::CellIndex to);

// Ray-casts each finite beam into every level: traversed cells get the free
// increment and the endpoint cell the occupied one. A cell is updated at most
// once per scan per level, and an occupied update wins over a free one.
// Beam segments leaving the grid are clipped. Throws Error(kOutOfGrid) when
// the pose itself is off the map.
void IntegrateScan(MultiResGrid& map, const Pose2D& pose,
                   const world::LaserScan& scan);

}  // namespace scaletwin::slam

#endif  // SCALETWIN_SLAM_MULTIRES_GRID_H_
