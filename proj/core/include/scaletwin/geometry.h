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

#ifndef SCALETWIN_GEOMETRY_H_
#define SCALETWIN_GEOMETRY_H_

#include <cmath>
#include <numbers>

namespace scaletwin {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kMetersPerInch = 0.0254;

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double theta);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double Norm() const { return std::hypot(x, y); }
  double Dot(Vec2 o) const { return x * o.x + y * o.y; }
  double Cross(Vec2 o) const { return x * o.y - y * o.x; }
};

// Planar pose. Every operation that writes theta leaves it in (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 Translation() const { return {x, y}; }

  // Maps a point from this pose's frame into the parent frame.
  Vec2 Transform(Vec2 local) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {x + c * local.x - s * local.y, y + s * local.x + c * local.y};
  }

  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

inline Pose2D MakePose(double x, double y, double theta) {
  return {x, y, NormalizeAngle(theta)};
}

struct Twist2D {
  double v = 0.0;      // m/s, longitudinal
  double omega = 0.0;  // rad/s, yaw rate

  friend bool operator==(const Twist2D&, const Twist2D&) = default;
};

}  // namespace scaletwin

#endif  // SCALETWIN_GEOMETRY_H_
