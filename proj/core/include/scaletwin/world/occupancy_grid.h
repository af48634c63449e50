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

#ifndef SCALETWIN_WORLD_OCCUPANCY_GRID_H_
#define SCALETWIN_WORLD_OCCUPANCY_GRID_H_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scaletwin/geometry.h"

namespace scaletwin::world {

struct CellIndex {
  int x = 0;
  int y = 0;

  friend bool operator==(CellIndex, CellIndex) = default;
};

inline double LogOddsToProbability(double log_odds) {
  return 1.0 / (1.0 + std::exp(-log_odds));
}

// Row-major grid of log-odds occupancy. Cell (i, j) covers
// [i, i+1) x [j, j+1) in grid units; grid units map to the world through
// `origin` (the pose of the cell (0, 0) corner) scaled by `resolution`.
class OccupancyGrid {
 public:
  static constexpr double kDefaultLogOddsMin = -4.0;
  static constexpr double kDefaultLogOddsMax = 4.0;

  // Throws Error(kInvalidArgument) for non-positive resolution or size.
  OccupancyGrid(double resolution, Pose2D origin, int width, int height,
                double log_odds_min = kDefaultLogOddsMin,
                double log_odds_max = kDefaultLogOddsMax);

  double resolution() const { return resolution_; }
  const Pose2D& origin() const { return origin_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double log_odds_min() const { return log_odds_min_; }
  double log_odds_max() const { return log_odds_max_; }

  bool Contains(CellIndex c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  double LogOdds(CellIndex c) const { return cells_[Offset(c)]; }
  double Probability(CellIndex c) const { return LogOddsToProbability(LogOdds(c)); }
  // Both clamp to [log_odds_min, log_odds_max].
  void SetLogOdds(CellIndex c, double value);
  void AddLogOdds(CellIndex c, double delta);

  // Continuous grid coordinates of a world point and back.
  Vec2 WorldToGrid(Vec2 world) const;
  Vec2 GridToWorld(Vec2 grid) const;
  Vec2 CellCenter(CellIndex c) const {
    return GridToWorld({c.x + 0.5, c.y + 0.5});
  }
  CellIndex CellAt(Vec2 world) const;

  std::span<const double> cells() const { return cells_; }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  std::size_t Offset(CellIndex c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }

  double resolution_;
  Pose2D origin_;
  int width_;
  int height_;
  double log_odds_min_;
  double log_odds_max_;
  double cos_theta_;
  double sin_theta_;
  std::vector<double> cells_;
};

}  // namespace scaletwin::world

#endif  // SCALETWIN_WORLD_OCCUPANCY_GRID_H_
