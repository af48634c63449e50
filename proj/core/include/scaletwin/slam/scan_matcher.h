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

#ifndef SCALETWIN_SLAM_SCAN_MATCHER_H_
#define SCALETWIN_SLAM_SCAN_MATCHER_H_

#include <Eigen/Core>
#include <span>
#include <vector>

#include "scaletwin/geometry.h"
#include "scaletwin/slam/multires_grid.h"
#include "scaletwin/world/lidar.h"

namespace scaletwin::slam {

struct MatchConfig {
  double tolerance = 1e-4;     // stop once the applied update norm drops below
  int max_iterations = 30;     // per pyramid level
  std::size_t min_returns = 8;
  double damping = 1e-9;       // lambda = damping * trace(H)
};

struct ScanMatchResult {
  Pose2D pose;
  int iterations = 0;        // Gauss-Newton iterations at the finest level
  int total_iterations = 0;  // summed over all levels
  bool converged = false;    // finest level stopped on the update tolerance
  double final_error = 0.0;  // sum of (1 - M)^2 at the finest level
  double last_update_norm = 0.0;
  std::size_t points = 0;
  // Undamped Gauss-Newton Hessian at the returned pose (finest level).
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
};

// Beam endpoints in the sensor frame.
std::vector<Vec2> ScanEndpoints(const world::LaserScan& scan);

// Sum of squared map residuals (1 - M(S_i(pose)))^2 on one level. Endpoints
// that project outside the interpolation area contribute a residual of 1.
double MatchObjective(const world::OccupancyGrid& grid,
                      std::span<const Vec2> endpoints, const Pose2D& pose);

// Gauss-Newton alignment of the scan against the map, coarse to fine. Each
// step solves (H + lambda I) d = J^T r and is halved until the objective does
// not increase. Throws Error(kInsufficientReturns) when fewer than
// min_returns beams are finite and Error(kDegenerateHessian) when the damped
// Hessian stays singular.
ScanMatchResult MatchScan(const MultiResGrid& map, const world::LaserScan& scan,
                          const Pose2D& initial, const MatchConfig& config = {});

}  // namespace scaletwin::slam

#endif  // SCALETWIN_SLAM_SCAN_MATCHER_H_
