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

#include "scaletwin/world/lidar.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "scaletwin/error.h"

namespace scaletwin::world {

LidarSpec LidarSpec::G2(double scan_freq, double noise_sigma) {
  if (!(scan_freq >= 5.0 && scan_freq <= 12.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "G2 scan frequency must be within [5, 12] Hz");
  }
  LidarSpec spec;
  spec.scan_freq = scan_freq;
  spec.noise_sigma = noise_sigma;
  return spec;
}

void LidarSpec::Validate() const {
  if (!(min_range > 0.0 && min_range < max_range)) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < min_range < max_range");
  }
  if (!(scan_freq > 0.0 && range_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "frequencies must be positive");
  }
  if (range_rate / scan_freq < 8.0) {
    throw Error(ErrorCode::kInvalidArgument, "fewer than 8 beams per scan");
  }
  if (!(noise_sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise_sigma must be >= 0");
  }
}

int BeamsPerScan(const LidarSpec& spec) {
  return static_cast<int>(std::lround(spec.range_rate / spec.scan_freq));
}

double AngleIncrement(const LidarSpec& spec) {
  return kTwoPi / BeamsPerScan(spec);
}

std::size_t LaserScan::FiniteCount() const {
  return static_cast<std::size_t>(
      std::count_if(ranges.begin(), ranges.end(),
                    [](const auto& r) { return r.has_value(); }));
}

LaserScan SimulateScan(const WorldModel& world, const Pose2D& pose,
                       const LidarSpec& spec, std::uint64_t seed,
                       std::uint64_t stamp_ns) {
  spec.Validate();
  if (!world.bounds().Contains(pose.Translation())) {
    throw Error(ErrorCode::kPoseOutOfBounds, "scan pose outside world bounds");
  }
  const int beams = BeamsPerScan(spec);
  LaserScan scan;
  scan.pose_hint = pose;
  scan.angle_start = 0.0;
  scan.angle_increment = kTwoPi / beams;
  scan.stamp_ns = stamp_ns;
  scan.ranges.reserve(static_cast<std::size_t>(beams));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  const Vec2 origin = pose.Translation();
  for (int i = 0; i < beams; ++i) {
    const double angle = pose.theta + scan.BeamAngle(static_cast<std::size_t>(i));
    std::optional<double> range = Raycast(world, origin, angle);
    if (range && spec.noise_sigma > 0.0) *range += noise(rng);
    if (range && (*range < spec.min_range || *range > spec.max_range)) {
      range.reset();
    }
    scan.ranges.push_back(range);
  }
  return scan;
}

}  // namespace scaletwin::world
