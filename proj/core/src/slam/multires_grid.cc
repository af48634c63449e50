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

#include "scaletwin/slam/multires_grid.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "scaletwin/error.h"

namespace scaletwin::slam {

using world::CellIndex;
using world::OccupancyGrid;

MultiResGrid::MultiResGrid(const MapConfig& config, Pose2D origin)
    : config_(config) {
  if (config.levels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "map needs at least one level");
  }
  int width = static_cast<int>(std::ceil(config.width_m / config.resolution));
  int height = static_cast<int>(std::ceil(config.height_m / config.resolution));
  double resolution = config.resolution;
  for (int k = 0; k < config.levels; ++k) {
    levels_.emplace_back(resolution, origin, width, height, config.log_odds_min,
                         config.log_odds_max);
    resolution *= 2.0;
    width = (width + 1) / 2;
    height = (height + 1) / 2;
  }
}

MultiResGrid MultiResGrid::CenteredOn(const MapConfig& config, Vec2 center) {
  const int width = static_cast<int>(std::ceil(config.width_m / config.resolution));
  const int height = static_cast<int>(std::ceil(config.height_m / config.resolution));
  const double r = config.resolution;
  const Pose2D origin{center.x - (width / 2 + 0.5) * r,
                      center.y - (height / 2 + 0.5) * r, 0.0};
  return MultiResGrid(config, origin);
}

std::optional<MapSample> TryInterpolateMap(const OccupancyGrid& grid,
                                           Vec2 point) {
  // Coordinates relative to the cell-center lattice.
  const Vec2 g = grid.WorldToGrid(point);
  const double cx = g.x - 0.5;
  const double cy = g.y - 0.5;
  if (!(cx >= 0.0 && cy >= 0.0 && cx <= grid.width() - 1 &&
        cy <= grid.height() - 1)) {
    return std::nullopt;
  }
  int ix = static_cast<int>(std::floor(cx));
  int iy = static_cast<int>(std::floor(cy));
  double fx = cx - ix;
  double fy = cy - iy;
  // The last center row/column interpolates from the cell below it.
  if (ix == grid.width() - 1) {
    if (ix == 0) return std::nullopt;
    --ix;
    fx = 1.0;
  }
  if (iy == grid.height() - 1) {
    if (iy == 0) return std::nullopt;
    --iy;
    fy = 1.0;
  }
  const double p00 = grid.Probability({ix, iy});
  const double p10 = grid.Probability({ix + 1, iy});
  const double p01 = grid.Probability({ix, iy + 1});
  const double p11 = grid.Probability({ix + 1, iy + 1});

  MapSample sample;
  sample.value = (1.0 - fy) * ((1.0 - fx) * p00 + fx * p10) +
                 fy * ((1.0 - fx) * p01 + fx * p11);
  const double dgx = ((1.0 - fy) * (p10 - p00) + fy * (p11 - p01)) / grid.resolution();
  const double dgy = ((1.0 - fx) * (p01 - p00) + fx * (p11 - p10)) / grid.resolution();
  // Grid axes are the world axes rotated by the origin heading.
  const double c = std::cos(grid.origin().theta);
  const double s = std::sin(grid.origin().theta);
  sample.gradient = {c * dgx - s * dgy, s * dgx + c * dgy};
  return sample;
}

MapSample InterpolateMap(const OccupancyGrid& grid, Vec2 point) {
  auto sample = TryInterpolateMap(grid, point);
  if (!sample) throw Error(ErrorCode::kOutOfGrid, "point outside interpolation area");
  return *sample;
}

std::vector<CellIndex> BresenhamLine(CellIndex from, CellIndex to) {
  std::vector<CellIndex> cells;
  const int dx = std::abs(to.x - from.x);
  const int dy = -std::abs(to.y - from.y);
  const int sx = from.x < to.x ? 1 : -1;
  const int sy = from.y < to.y ? 1 : -1;
  cells.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  int err = dx + dy;
  CellIndex c = from;
  while (true) {
    cells.push_back(c);
    if (c == to) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      c.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      c.y += sy;
    }
  }
  return cells;
}

namespace {

enum CellMark : std::uint8_t { kUntouched = 0, kFree = 1, kOccupied = 2 };

void IntegrateIntoLevel(OccupancyGrid& grid, const MapConfig& config,
                        const Pose2D& pose, const world::LaserScan& scan) {
  const CellIndex start = grid.CellAt(pose.Translation());
  if (!grid.Contains(start)) {
    throw Error(ErrorCode::kOutOfGrid, "scan pose outside map");
  }
  std::vector<std::uint8_t> marks(
      static_cast<std::size_t>(grid.width()) * static_cast<std::size_t>(grid.height()),
      kUntouched);
  auto offset = [&grid](CellIndex c) {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(grid.width()) +
           static_cast<std::size_t>(c.x);
  };

  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    if (!scan.ranges[i]) continue;
    const double r = *scan.ranges[i];
    const double a = scan.BeamAngle(i);
    const Vec2 end = pose.Transform({r * std::cos(a), r * std::sin(a)});
    const CellIndex end_cell = grid.CellAt(end);
    const auto line = BresenhamLine(start, end_cell);
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      if (!grid.Contains(line[k])) break;  // clipped at the map edge
      auto& mark = marks[offset(line[k])];
      if (mark == kUntouched) mark = kFree;
    }
    if (grid.Contains(end_cell)) marks[offset(end_cell)] = kOccupied;
  }

  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const CellIndex c{x, y};
      switch (marks[offset(c)]) {
        case kFree:
          grid.AddLogOdds(c, config.log_odds_free);
          break;
        case kOccupied:
          grid.AddLogOdds(c, config.log_odds_occupied);
          break;
        default:
          break;
      }
    }
  }
}

}  // namespace

void IntegrateScan(MultiResGrid& map, const Pose2D& pose,
                   const world::LaserScan& scan) {
  for (int k = 0; k < map.num_levels(); ++k) {
    IntegrateIntoLevel(map.mutable_level(k), map.config(), pose, scan);
  }
}

}  // namespace scaletwin::slam
