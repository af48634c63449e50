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

#ifndef SCALETWIN_SLAM_SLAM_PIPELINE_H_
#define SCALETWIN_SLAM_SLAM_PIPELINE_H_

#include <Eigen/Core>
#include <optional>
#include <string>

#include "scaletwin/slam/ekf.h"
#include "scaletwin/slam/multires_grid.h"
#include "scaletwin/slam/scan_matcher.h"
#include "scaletwin/world/lidar.h"

namespace scaletwin::slam {

struct SlamConfig {
  MapConfig map;
  MatchConfig match;
  // Diagonal process noise accumulated per second of prediction.
  Eigen::Vector3d process_noise_rate{1e-3, 1e-3, 1e-3};
  Eigen::Vector3d initial_variance{1e-6, 1e-6, 1e-6};
  // Added to the scan-match covariance before the EKF update.
  Eigen::Vector3d measurement_floor{1e-6, 1e-6, 1e-6};
  double innovation_gate = kInnovationGate;
};

enum class SlamStatus {
  kInitialized,       // first scan written into an empty map
  kTracking,          // scan matched, fused and integrated
  kTrackingDegraded,  // match failed or was rejected; map left untouched
  kOdometryOnly,      // no scan this step
};

const char* SlamStatusName(SlamStatus status);

struct SlamStepResult {
  Pose2D pose;
  SlamStatus status = SlamStatus::kOdometryOnly;
  std::optional<ScanMatchResult> match;
  std::string detail;
};

// Scan-match measurement covariance: H^-1 scaled by the residual variance
// error / (n - 3), plus the configured floor.
Eigen::Matrix3d MatchCovariance(const ScanMatchResult& match,
                                const Eigen::Vector3d& floor);

// Single-owner SLAM stage. The map is a fixed-extent pyramid centered on the
// initial pose.
class SlamPipeline {
 public:
  SlamPipeline(const SlamConfig& config, const Pose2D& initial_pose);

  // EKF prediction from wheel odometry over dt seconds.
  void Predict(const Twist2D& odom, double dt);

  // Match seeded at the predicted mean, fuse, then integrate at the fused
  // pose. The first scan is integrated directly.
  SlamStepResult Correct(const world::LaserScan& scan);

  // Predict followed by Correct when a scan is present.
  SlamStepResult Step(const std::optional<world::LaserScan>& scan,
                      const Twist2D& odom, double dt);

  const MultiResGrid& map() const { return map_; }
  const EkfState& ekf() const { return ekf_; }
  Pose2D pose() const { return ekf_.mean; }
  int scans_integrated() const { return scans_integrated_; }

 private:
  SlamConfig config_;
  MultiResGrid map_;
  EkfState ekf_;
  int scans_integrated_ = 0;
};

}  // namespace scaletwin::slam

#endif  // SCALETWIN_SLAM_SLAM_PIPELINE_H_
