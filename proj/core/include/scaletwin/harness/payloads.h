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

#ifndef SCALETWIN_HARNESS_PAYLOADS_H_
#define SCALETWIN_HARNESS_PAYLOADS_H_

#include <cstdint>
#include <span>

#include "scaletwin/bus/envelope.h"
#include "scaletwin/geometry.h"
#include "scaletwin/vehicle/actuators.h"
#include "scaletwin/world/lidar.h"

// Bus payload encodings. All fields are little-endian; doubles are IEEE-754
// binary64.
//
//   cmd   v, delta
//   odom  v, omega, x, y, theta   (twist plus the dead-reckoned pose)
//   pose  x, y, theta
//   scan  stamp_ns u64, angle_start, angle_increment, count u32,
//         count ranges (NaN for no-return)
//   map   world::EncodeGridSnapshot of the finest SLAM level
//
// Decoders throw Error(kTruncatedFrame) on short input and
// Error(kLengthMismatch) on surplus bytes.
namespace scaletwin::harness {

inline constexpr char kTopicCmd[] = "cmd";
inline constexpr char kTopicOdom[] = "odom";
inline constexpr char kTopicPose[] = "pose";
inline constexpr char kTopicScan[] = "scan";
inline constexpr char kTopicMap[] = "map";

struct OdometryMessage {
  Twist2D twist;
  Pose2D pose;
};

bus::Bytes EncodeCommand(const vehicle::AckermannCommand& command);
vehicle::AckermannCommand DecodeCommand(std::span<const std::uint8_t> bytes);

bus::Bytes EncodeOdometry(const OdometryMessage& odom);
OdometryMessage DecodeOdometry(std::span<const std::uint8_t> bytes);

bus::Bytes EncodePose(const Pose2D& pose);
Pose2D DecodePose(std::span<const std::uint8_t> bytes);

// The pose hint is not carried.
bus::Bytes EncodeScan(const world::LaserScan& scan);
world::LaserScan DecodeScan(std::span<const std::uint8_t> bytes);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_PAYLOADS_H_
