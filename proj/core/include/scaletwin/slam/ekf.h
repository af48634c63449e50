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

#ifndef SCALETWIN_SLAM_EKF_H_
#define SCALETWIN_SLAM_EKF_H_

#include <Eigen/Core>

#include "scaletwin/geometry.h"

namespace scaletwin::slam {

// Pose estimate (x, y, theta) with its covariance.
struct EkfState {
  Pose2D mean;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
};

// 99% quantile of chi-square with 3 degrees of freedom.
inline constexpr double kInnovationGate = 9.21;

// Unicycle motion model: x += v cos(theta) dt, y += v sin(theta) dt,
// theta += omega dt.
Pose2D MotionModel(const Pose2D& pose, const Twist2D& odom, double dt);
// d MotionModel / d (x, y, theta).
Eigen::Matrix3d MotionJacobian(const Pose2D& pose, const Twist2D& odom, double dt);

// P' = F P F^T + Q. Throws Error(kInvalidArgument) for dt <= 0.
EkfState EkfPredict(const EkfState& state, const Twist2D& odom, double dt,
                    const Eigen::Matrix3d& process_noise);

struct EkfUpdateResult {
  EkfState state;
  bool accepted = false;
  double mahalanobis_sq = 0.0;
};

// Direct pose measurement (H = I). The heading innovation is wrapped to
// (-pi, pi]; the covariance update uses the Joseph form. A measurement whose
// squared Mahalanobis distance exceeds `gate` is rejected and the state
// returned unchanged. Throws Error(kInvalidArgument) unless R is positive
// definite.
EkfUpdateResult EkfUpdate(const EkfState& state, const Pose2D& measured,
                          const Eigen::Matrix3d& measurement_noise,
                          double gate = kInnovationGate);

}  // namespace scaletwin::slam

#endif  // SCALETWIN_SLAM_EKF_H_
