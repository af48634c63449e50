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

#include "scaletwin/slam/slam_pipeline.h"

#include <Eigen/Cholesky>
#include <algorithm>

#include "scaletwin/error.h"

namespace scaletwin::slam {

const char* SlamStatusName(SlamStatus status) {
  switch (status) {
    case SlamStatus::kInitialized: return "initialized";
    case SlamStatus::kTracking: return "tracking";
    case SlamStatus::kTrackingDegraded: return "tracking-degraded";
    case SlamStatus::kOdometryOnly: return "odometry-only";
  }
  return "unknown";
}

Eigen::Matrix3d MatchCovariance(const ScanMatchResult& match,
                                const Eigen::Vector3d& floor) {
  const double dof = std::max<double>(1.0, static_cast<double>(match.points) - 3.0);
  const double variance = match.final_error / dof;
  Eigen::Matrix3d cov = floor.asDiagonal();
  const Eigen::LDLT<Eigen::Matrix3d> solver(match.hessian);
  if (solver.info() == Eigen::Success && solver.isPositive() &&
      solver.vectorD().minCoeff() > 0.0) {
    const Eigen::Matrix3d inv = solver.solve(Eigen::Matrix3d::Identity());
    cov += variance * 0.5 * (inv + inv.transpose());
  }
  return cov;
}

SlamPipeline::SlamPipeline(const SlamConfig& config, const Pose2D& initial_pose)
    : config_(config),
      map_(MultiResGrid::CenteredOn(config.map, initial_pose.Translation())) {
  ekf_.mean = initial_pose;
  ekf_.covariance = config.initial_variance.asDiagonal();
}

void SlamPipeline::Predict(const Twist2D& odom, double dt) {
  const Eigen::Matrix3d q = (config_.process_noise_rate * dt).asDiagonal();
  ekf_ = EkfPredict(ekf_, odom, dt, q);
}

SlamStepResult SlamPipeline::Correct(const world::LaserScan& scan) {
  SlamStepResult result;
  if (scans_integrated_ == 0) {
    IntegrateScan(map_, ekf_.mean, scan);
    ++scans_integrated_;
    result.status = SlamStatus::kInitialized;
    result.pose = ekf_.mean;
    return result;
  }
  try {
    result.match = MatchScan(map_, scan, ekf_.mean, config_.match);
  } catch (const Error& e) {
    result.status = SlamStatus::kTrackingDegraded;
    result.detail = e.what();
    result.pose = ekf_.mean;
    return result;
  }
  if (!result.match->converged) {
    result.status = SlamStatus::kTrackingDegraded;
    result.detail = "scan match did not converge";
    result.pose = ekf_.mean;
    return result;
  }
  const Eigen::Matrix3d r = MatchCovariance(*result.match, config_.measurement_floor);
  const EkfUpdateResult update =
      EkfUpdate(ekf_, result.match->pose, r, config_.innovation_gate);
  if (!update.accepted) {
    result.status = SlamStatus::kTrackingDegraded;
    result.detail = "scan match rejected by innovation gate";
    result.pose = ekf_.mean;
    return result;
  }
  ekf_ = update.state;
  try {
    IntegrateScan(map_, ekf_.mean, scan);
    ++scans_integrated_;
    result.status = SlamStatus::kTracking;
  } catch (const Error& e) {
    result.status = SlamStatus::kTrackingDegraded;
    result.detail = e.what();
  }
  result.pose = ekf_.mean;
  return result;
}

SlamStepResult SlamPipeline::Step(const std::optional<world::LaserScan>& scan,
                                  const Twist2D& odom, double dt) {
  Predict(odom, dt);
  if (!scan) {
    SlamStepResult result;
    result.pose = ekf_.mean;
    result.status = SlamStatus::kOdometryOnly;
    return result;
  }
  return Correct(*scan);
}

}  // namespace scaletwin::slam
