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

#include "scaletwin/slam/ekf.h"

#include <Eigen/Cholesky>
#include <cmath>

#include "scaletwin/error.h"

namespace scaletwin::slam {

Pose2D MotionModel(const Pose2D& pose, const Twist2D& odom, double dt) {
  return {pose.x + odom.v * std::cos(pose.theta) * dt,
          pose.y + odom.v * std::sin(pose.theta) * dt,
          NormalizeAngle(pose.theta + odom.omega * dt)};
}

Eigen::Matrix3d MotionJacobian(const Pose2D& pose, const Twist2D& odom,
                               double dt) {
  Eigen::Matrix3d f = Eigen::Matrix3d::Identity();
  f(0, 2) = -odom.v * std::sin(pose.theta) * dt;
  f(1, 2) = odom.v * std::cos(pose.theta) * dt;
  return f;
}

EkfState EkfPredict(const EkfState& state, const Twist2D& odom, double dt,
                    const Eigen::Matrix3d& process_noise) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be > 0");
  const Eigen::Matrix3d f = MotionJacobian(state.mean, odom, dt);
  EkfState next;
  next.mean = MotionModel(state.mean, odom, dt);
  next.covariance = f * state.covariance * f.transpose() + process_noise;
  next.covariance = 0.5 * (next.covariance + next.covariance.transpose()).eval();
  return next;
}

EkfUpdateResult EkfUpdate(const EkfState& state, const Pose2D& measured,
                          const Eigen::Matrix3d& measurement_noise,
                          double gate) {
  const Eigen::LLT<Eigen::Matrix3d> r_check(measurement_noise);
  if (r_check.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument,
                "measurement covariance must be positive definite");
  }
  const Eigen::Vector3d innovation(measured.x - state.mean.x,
                                   measured.y - state.mean.y,
                                   NormalizeAngle(measured.theta - state.mean.theta));
  const Eigen::Matrix3d s = state.covariance + measurement_noise;
  const Eigen::LDLT<Eigen::Matrix3d> s_solver(s);
  EkfUpdateResult result;
  result.mahalanobis_sq = innovation.dot(s_solver.solve(innovation));
  result.state = state;
  if (!(result.mahalanobis_sq <= gate)) return result;

  // K = P S^-1, computed as (S^-1 P)^T since both are symmetric.
  const Eigen::Matrix3d gain = s_solver.solve(state.covariance).transpose();
  const Eigen::Vector3d correction = gain * innovation;
  result.state.mean = {state.mean.x + correction.x(), state.mean.y + correction.y(),
                       NormalizeAngle(state.mean.theta + correction.z())};
  const Eigen::Matrix3d i_minus_k = Eigen::Matrix3d::Identity() - gain;
  Eigen::Matrix3d p = i_minus_k * state.covariance * i_minus_k.transpose() +
                      gain * measurement_noise * gain.transpose();
  result.state.covariance = 0.5 * (p + p.transpose());
  result.accepted = true;
  return result;
}

}  // namespace scaletwin::slam
