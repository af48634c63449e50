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

#ifndef SCALETWIN_PLANNER_OBSTACLES_H_
#define SCALETWIN_PLANNER_OBSTACLES_H_

#include <span>
#include <vector>

#include "scaletwin/geometry.h"
#include "scaletwin/planner/apf.h"
#include "scaletwin/world/lidar.h"

namespace scaletwin::planner {

struct ObstacleExtractionConfig {
  double cluster_eps = 0.3;   // single-linkage distance, m
  double min_radius = 0.05;   // floor for degenerate clusters, m
  // Clusters whose enclosing circle is larger are split along scan order,
  // so a room's walls do not collapse into one circle around the vehicle.
  double max_radius = 0.3;
};

// Smallest circle containing every point (Welzl, deterministic order).
// Precondition: points is non-empty.
Obstacle MinimalEnclosingCircle(std::span<const Vec2> points);

// Finite beam endpoints in the world frame, clustered by single linkage and
// summarized as enclosing circles.
std::vector<Obstacle> ExtractObstacles(const world::LaserScan& scan,
                                       const Pose2D& pose,
                                       const ObstacleExtractionConfig& config = {});

}  // namespace scaletwin::planner

#endif  // SCALETWIN_PLANNER_OBSTACLES_H_
