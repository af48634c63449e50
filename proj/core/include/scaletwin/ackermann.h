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

#ifndef SCALETWIN_ACKERMANN_H_
#define SCALETWIN_ACKERMANN_H_

#include <optional>

namespace scaletwin {

// Chassis geometry and actuator limits, all SI. Positive steering angles and
// turning radii denote left (counter-clockwise) turns.
struct ChassisParams {
  double wheelbase = 0.0;       // m
  double track = 0.0;           // m
  double max_speed = 0.0;       // m/s
  double min_speed = 0.0;       // m/s
  double max_steer = 0.0;       // rad, equivalent-bicycle angle
  double max_accel = 0.0;       // m/s^2, symmetric for braking
  double max_steer_rate = 0.0;  // rad/s

  // Throws Error(kInvalidArgument) when an invariant is violated.
  void Validate() const;
};

// 1/10-scale chassis: 12.75 in wheelbase, 11.65 in track, +-5 m/s,
// +-0.36 rad steering, 6.67 m/s^2 and 5.22 rad/s actuator rates.
ChassisParams DefaultChassis();

struct WheelAngles {
  double inner = 0.0;  // rad
  double outer = 0.0;  // rad
};

// Inner/outer front-wheel angles for a turn of signed radius `radius`
// measured at the rear-axle center. Throws Error(kDomainError) when
// |radius| <= track / 2.
WheelAngles AckermannWheelAngles(const ChassisParams& params, double radius);

// Signed turning radius of the kinematic bicycle. Straight() is the
// infinite-radius case produced by a zero steering angle.
class TurningRadius {
 public:
  static TurningRadius Straight() { return TurningRadius(std::nullopt); }
  static TurningRadius Finite(double meters) { return TurningRadius(meters); }

  bool is_straight() const { return !meters_.has_value(); }
  // Precondition: !is_straight().
  double meters() const { return *meters_; }

 private:
  explicit TurningRadius(std::optional<double> meters) : meters_(meters) {}
  std::optional<double> meters_;
};

// R = L / tan(delta). Throws Error(kInvalidArgument) for |delta| > max_steer.
TurningRadius TurningRadiusFromSteer(const ChassisParams& params, double delta);

}  // namespace scaletwin

#endif  // SCALETWIN_ACKERMANN_H_
