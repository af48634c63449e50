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

#ifndef SCALETWIN_VEHICLE_ODOMETRY_H_
#define SCALETWIN_VEHICLE_ODOMETRY_H_

#include <random>
#include <span>

#include "scaletwin/ackermann.h"
#include "scaletwin/geometry.h"
#include "scaletwin/vehicle/actuators.h"

namespace scaletwin::vehicle {

struct OdometryNoise {
  double sigma_v = 0.0;      // m/s
  double sigma_omega = 0.0;  // rad/s
};

// Twist reported by the speed controller: each motor sample is mapped back
// through the inverse calibration, v and omega = v tan(delta) / L are
// averaged over the window, then zero-mean Gaussian noise is added when
// `rng` is non-null. Throws Error(kInvalidArgument) on an empty history and
// Error(kDegenerateCalibration) on a zero gain.
Twist2D OdometryFromActuators(std::span<const MotorCommand> history,
                              const ActuatorCalibration& cal,
                              const ChassisParams& params,
                              const OdometryNoise& noise = {},
                              std::mt19937_64* rng = nullptr);

}  // namespace scaletwin::vehicle

#endif  // SCALETWIN_VEHICLE_ODOMETRY_H_
