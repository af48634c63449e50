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

#ifndef SCALETWIN_WORLD_LIDAR_H_
#define SCALETWIN_WORLD_LIDAR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "scaletwin/geometry.h"
#include "scaletwin/world/world_model.h"

namespace scaletwin::world {

// Planar 360 degree range sensor.
struct LidarSpec {
  double min_range = 0.12;    // m
  double max_range = 12.0;    // m
  double scan_freq = 10.0;    // Hz, revolutions per second
  double range_rate = 5000.0; // Hz, range samples per second
  double noise_sigma = 0.01;  // m

  // YDLIDAR G2 figures at the given scan frequency, which must lie in
  // [5, 12] Hz.
  static LidarSpec G2(double scan_freq = 10.0, double noise_sigma = 0.01);

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

// round(range_rate / scan_freq).
int BeamsPerScan(const LidarSpec& spec);
// 2 pi / BeamsPerScan.
double AngleIncrement(const LidarSpec& spec);

struct LaserScan {
  std::optional<Pose2D> pose_hint;
  // Beam i points at angle_start + i * angle_increment in the sensor frame.
  double angle_start = 0.0;
  double angle_increment = 0.0;
  // nullopt is a no-return: nothing hit, or outside [min_range, max_range].
  std::vector<std::optional<double>> ranges;
  std::uint64_t stamp_ns = 0;

  std::size_t FiniteCount() const;
  double BeamAngle(std::size_t i) const {
    return angle_start + static_cast<double>(i) * angle_increment;
  }

  friend bool operator==(const LaserScan&, const LaserScan&) = default;
};

// One revolution from `pose`. Beam 0 points along the heading. Ranges are the
// exact ray distances plus N(0, noise_sigma); with noise_sigma == 0 no random
// numbers are drawn. Throws Error(kPoseOutOfBounds).
LaserScan SimulateScan(const WorldModel& world, const Pose2D& pose,
                       const LidarSpec& spec, std::uint64_t seed,
                       std::uint64_t stamp_ns = 0);

}  // namespace scaletwin::world

#endif  // SCALETWIN_WORLD_LIDAR_H_
