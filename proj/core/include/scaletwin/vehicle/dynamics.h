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

#ifndef SCALETWIN_VEHICLE_DYNAMICS_H_
#define SCALETWIN_VEHICLE_DYNAMICS_H_

#include "scaletwin/ackermann.h"
#include "scaletwin/geometry.h"
#include "scaletwin/vehicle/actuators.h"

namespace scaletwin::vehicle {

struct VehicleState {
  Pose2D pose;
  double v = 0.0;      // actual speed, m/s
  double delta = 0.0;  // actual steering angle, rad
};

// Moves the actual speed and steering towards the command, each by at most
// its rate limit times dt, landing exactly on the target once within reach.
// Throws Error(kInvalidArgument) for dt <= 0.
VehicleState ApplyRateLimits(const VehicleState& state,
                             const AckermannCommand& command, double dt,
                             const ChassisParams& params);

// Yaw rate of the kinematic bicycle, v * tan(delta) / L.
double YawRate(double v, double delta, const ChassisParams& params);

// One RK4 step of the kinematic bicycle with v and delta held constant.
VehicleState StepKinematics(const VehicleState& state, double dt,
                            const ChassisParams& params);

}  // namespace scaletwin::vehicle

#endif  // SCALETWIN_VEHICLE_DYNAMICS_H_
