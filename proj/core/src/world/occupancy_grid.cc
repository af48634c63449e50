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

#include "scaletwin/world/occupancy_grid.h"

#include <algorithm>

#include "scaletwin/error.h"

namespace scaletwin::world {

OccupancyGrid::OccupancyGrid(double resolution, Pose2D origin, int width,
                             int height, double log_odds_min,
                             double log_odds_max)
    : resolution_(resolution),
      origin_(origin),
      width_(width),
      height_(height),
      log_odds_min_(log_odds_min),
      log_odds_max_(log_odds_max),
      cos_theta_(std::cos(origin.theta)),
      sin_theta_(std::sin(origin.theta)) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must be > 0");
  }
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be > 0");
  }
  if (!(log_odds_min < 0.0 && log_odds_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "log-odds clamp must bracket 0");
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                0.0);
}

void OccupancyGrid::SetLogOdds(CellIndex c, double value) {
  cells_[Offset(c)] = std::clamp(value, log_odds_min_, log_odds_max_);
}

void OccupancyGrid::AddLogOdds(CellIndex c, double delta) {
  double& cell = cells_[Offset(c)];
  cell = std::clamp(cell + delta, log_odds_min_, log_odds_max_);
}

Vec2 OccupancyGrid::WorldToGrid(Vec2 world) const {
  const Vec2 d = world - origin_.Translation();
  return {(cos_theta_ * d.x + sin_theta_ * d.y) / resolution_,
          (-sin_theta_ * d.x + cos_theta_ * d.y) / resolution_};
}

Vec2 OccupancyGrid::GridToWorld(Vec2 grid) const {
  const Vec2 d = resolution_ * grid;
  return {origin_.x + cos_theta_ * d.x - sin_theta_ * d.y,
          origin_.y + sin_theta_ * d.x + cos_theta_ * d.y};
}

CellIndex OccupancyGrid::CellAt(Vec2 world) const {
  const Vec2 g = WorldToGrid(world);
  return {static_cast<int>(std::floor(g.x)), static_cast<int>(std::floor(g.y))};
}

}  // namespace scaletwin::world
