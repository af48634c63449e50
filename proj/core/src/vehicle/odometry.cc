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

#include "scaletwin/vehicle/odometry.h"

#include "scaletwin/error.h"
#include "scaletwin/vehicle/dynamics.h"

namespace scaletwin::vehicle {

Twist2D OdometryFromActuators(std::span<const MotorCommand> history,
                              const ActuatorCalibration& cal,
                              const ChassisParams& params,
                              const OdometryNoise& noise,
                              std::mt19937_64* rng) {
  if (history.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "odometry needs >= 1 sample");
  }
  cal.Validate();
  Twist2D sum;
  for (const MotorCommand& sample : history) {
    const AckermannCommand c = ActuatorsToCommand(sample, cal);
    sum.v += c.v;
    sum.omega += YawRate(c.v, c.delta, params);
  }
  const double n = static_cast<double>(history.size());
  Twist2D twist{sum.v / n, sum.omega / n};
  if (rng != nullptr) {
    if (noise.sigma_v > 0.0) {
      twist.v += std::normal_distribution<double>(0.0, noise.sigma_v)(*rng);
    }
    if (noise.sigma_omega > 0.0) {
      twist.omega += std::normal_distribution<double>(0.0, noise.sigma_omega)(*rng);
    }
  }
  return twist;
}

}  // namespace scaletwin::vehicle
