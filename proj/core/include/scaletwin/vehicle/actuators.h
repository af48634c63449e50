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

#ifndef SCALETWIN_VEHICLE_ACTUATORS_H_
#define SCALETWIN_VEHICLE_ACTUATORS_H_

#include "scaletwin/ackermann.h"

namespace scaletwin::vehicle {

// Desired speed and equivalent-bicycle steering angle.
struct AckermannCommand {
  double v = 0.0;
  double delta = 0.0;

  // Saturates to the chassis limits the way the speed controller does.
  static AckermannCommand Clamped(double v, double delta,
                                  const ChassisParams& params);

  friend bool operator==(const AckermannCommand&, const AckermannCommand&) = default;
};

// Affine maps between (v, delta) and (motor RPM, servo position).
struct ActuatorCalibration {
  double rpm_per_mps = 0.0;   // K_m
  double rpm_offset = 0.0;    // m_o
  double servo_per_rad = 0.0; // K_s
  double servo_offset = 0.0;  // s_o

  // Throws Error(kDegenerateCalibration) if either gain is zero.
  void Validate() const;
};

// Typical VESC settings for a 1/10 chassis: 4614 ERPM per m/s, servo centered
// at 0.5304 with -1.2135 units per radian.
ActuatorCalibration DefaultCalibration();

struct MotorCommand {
  double rpm = 0.0;    // V_m
  double servo = 0.0;  // phi_s
};

MotorCommand CommandToActuators(const AckermannCommand& command,
                                const ActuatorCalibration& cal);

// Inverse map. Throws Error(kDegenerateCalibration) on a zero gain.
AckermannCommand ActuatorsToCommand(const MotorCommand& motor,
                                    const ActuatorCalibration& cal);

}  // namespace scaletwin::vehicle

#endif  // SCALETWIN_VEHICLE_ACTUATORS_H_
