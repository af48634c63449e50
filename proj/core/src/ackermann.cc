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

#include "scaletwin/ackermann.h"

#include <cmath>
#include <sstream>

#include "scaletwin/error.h"
#include "scaletwin/geometry.h"

namespace scaletwin {

void ChassisParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(std::isfinite(wheelbase) && wheelbase > 0.0, "wheelbase must be > 0");
  require(std::isfinite(track) && track > 0.0, "track must be > 0");
  require(max_steer > 0.0 && max_steer < kPi / 2.0,
          "max_steer must be in (0, pi/2)");
  require(std::isfinite(max_accel) && max_accel > 0.0, "max_accel must be > 0");
  require(std::isfinite(max_steer_rate) && max_steer_rate > 0.0,
          "max_steer_rate must be > 0");
  require(std::isfinite(max_speed) && std::isfinite(min_speed) &&
              max_speed > min_speed,
          "max_speed must exceed min_speed");
}

ChassisParams DefaultChassis() {
  ChassisParams p;
  p.wheelbase = 12.75 * kMetersPerInch;
  p.track = 11.65 * kMetersPerInch;
  p.max_speed = 5.0;
  p.min_speed = -5.0;
  p.max_steer = 0.36;
  p.max_accel = 6.67;
  p.max_steer_rate = 5.22;
  return p;
}

WheelAngles AckermannWheelAngles(const ChassisParams& params, double radius) {
  const double half_track = 0.5 * params.track;
  if (!(std::abs(radius) > half_track)) {
    std::ostringstream msg;
    msg << "turning radius " << radius << " within half track " << half_track;
    throw Error(ErrorCode::kDomainError, msg.str());
  }
  const double r = std::abs(radius);
  WheelAngles angles{std::atan(params.wheelbase / (r - half_track)),
                     std::atan(params.wheelbase / (r + half_track))};
  if (radius < 0.0) {
    angles.inner = -angles.inner;
    angles.outer = -angles.outer;
  }
  return angles;
}

TurningRadius TurningRadiusFromSteer(const ChassisParams& params,
                                     double delta) {
  if (!(std::abs(delta) <= params.max_steer)) {
    throw Error(ErrorCode::kInvalidArgument,
                "steering angle exceeds chassis limit");
  }
  if (delta == 0.0) return TurningRadius::Straight();
  return TurningRadius::Finite(params.wheelbase / std::tan(delta));
}

}  // namespace scaletwin
