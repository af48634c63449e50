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

#include "scaletwin/vehicle/actuators.h"

#include <algorithm>

#include "scaletwin/error.h"

namespace scaletwin::vehicle {

AckermannCommand AckermannCommand::Clamped(double v, double delta,
                                           const ChassisParams& params) {
  return {std::clamp(v, params.min_speed, params.max_speed),
          std::clamp(delta, -params.max_steer, params.max_steer)};
}

void ActuatorCalibration::Validate() const {
  if (rpm_per_mps == 0.0 || servo_per_rad == 0.0) {
    throw Error(ErrorCode::kDegenerateCalibration, "actuator gain is zero");
  }
}

ActuatorCalibration DefaultCalibration() {
  return {4614.0, 0.0, -1.2135, 0.5304};
}

MotorCommand CommandToActuators(const AckermannCommand& command,
                                const ActuatorCalibration& cal) {
  return {cal.rpm_per_mps * command.v + cal.rpm_offset,
          cal.servo_per_rad * command.delta + cal.servo_offset};
}

AckermannCommand ActuatorsToCommand(const MotorCommand& motor,
                                    const ActuatorCalibration& cal) {
  cal.Validate();
  return {(motor.rpm - cal.rpm_offset) / cal.rpm_per_mps,
          (motor.servo - cal.servo_offset) / cal.servo_per_rad};
}

}  // namespace scaletwin::vehicle
