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

#include "scaletwin/vehicle/dynamics.h"

#include <cmath>

#include "scaletwin/error.h"

namespace scaletwin::vehicle {
namespace {

double MoveTowards(double current, double target, double max_step) {
  const double diff = target - current;
  if (std::abs(diff) <= max_step) return target;
  return current + std::copysign(max_step, diff);
}

}  // namespace

VehicleState ApplyRateLimits(const VehicleState& state,
                             const AckermannCommand& command, double dt,
                             const ChassisParams& params) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be > 0");
  const AckermannCommand target =
      AckermannCommand::Clamped(command.v, command.delta, params);
  VehicleState next = state;
  next.v = MoveTowards(state.v, target.v, params.max_accel * dt);
  next.delta = MoveTowards(state.delta, target.delta, params.max_steer_rate * dt);
  return next;
}

double YawRate(double v, double delta, const ChassisParams& params) {
  return v * std::tan(delta) / params.wheelbase;
}

VehicleState StepKinematics(const VehicleState& state, double dt,
                            const ChassisParams& params) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be > 0");
  VehicleState next = state;
  if (state.v == 0.0) return next;

  const double v = state.v;
  const double omega = YawRate(v, state.delta, params);
  const double theta = state.pose.theta;
  // The heading rate is constant over the step, so the RK4 stages only differ
  // in the heading at which the translation is evaluated.
  const double theta_mid = theta + 0.5 * dt * omega;
  const double theta_end = theta + dt * omega;
  const double cos_sum =
      std::cos(theta) + 4.0 * std::cos(theta_mid) + std::cos(theta_end);
  const double sin_sum =
      std::sin(theta) + 4.0 * std::sin(theta_mid) + std::sin(theta_end);
  next.pose.x = state.pose.x + dt / 6.0 * v * cos_sum;
  next.pose.y = state.pose.y + dt / 6.0 * v * sin_sum;
  next.pose.theta = NormalizeAngle(theta_end);
  return next;
}

}  // namespace scaletwin::vehicle
