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

#include "scaletwin/harness/payloads.h"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "scaletwin/error.h"

namespace scaletwin::harness {
namespace {

class Writer {
 public:
  void U32(std::uint32_t v) { Put(v); }
  void U64(std::uint64_t v) { Put(v); }
  void F64(double v) { Put(std::bit_cast<std::uint64_t>(v)); }
  bus::Bytes Take() { return std::move(out_); }

 private:
  template <typename T>
  void Put(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  bus::Bytes out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, const char* what)
      : bytes_(bytes), what_(what) {}

  std::uint32_t U32() { return Get<std::uint32_t>(); }
  std::uint64_t U64() { return Get<std::uint64_t>(); }
  double F64() { return std::bit_cast<double>(Get<std::uint64_t>()); }

  void Finish() const {
    if (offset_ != bytes_.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  std::string(what_) + " payload has trailing bytes");
    }
  }

 private:
  template <typename T>
  T Get() {
    if (bytes_.size() - offset_ < sizeof(T)) {
      throw Error(ErrorCode::kTruncatedFrame,
                  std::string(what_) + " payload is truncated");
    }
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(bytes_[offset_ + i]) << (8 * i);
    }
    offset_ += sizeof(T);
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  const char* what_;
  std::size_t offset_ = 0;
};

}  // namespace

bus::Bytes EncodeCommand(const vehicle::AckermannCommand& command) {
  Writer w;
  w.F64(command.v);
  w.F64(command.delta);
  return w.Take();
}

vehicle::AckermannCommand DecodeCommand(std::span<const std::uint8_t> bytes) {
  Reader r(bytes, "cmd");
  vehicle::AckermannCommand command;
  command.v = r.F64();
  command.delta = r.F64();
  r.Finish();
  return command;
}

bus::Bytes EncodeOdometry(const OdometryMessage& odom) {
  Writer w;
  w.F64(odom.twist.v);
  w.F64(odom.twist.omega);
  w.F64(odom.pose.x);
  w.F64(odom.pose.y);
  w.F64(odom.pose.theta);
  return w.Take();
}

OdometryMessage DecodeOdometry(std::span<const std::uint8_t> bytes) {
  Reader r(bytes, "odom");
  OdometryMessage odom;
  odom.twist.v = r.F64();
  odom.twist.omega = r.F64();
  odom.pose.x = r.F64();
  odom.pose.y = r.F64();
  odom.pose.theta = r.F64();
  r.Finish();
  return odom;
}

bus::Bytes EncodePose(const Pose2D& pose) {
  Writer w;
  w.F64(pose.x);
  w.F64(pose.y);
  w.F64(pose.theta);
  return w.Take();
}

Pose2D DecodePose(std::span<const std::uint8_t> bytes) {
  Reader r(bytes, "pose");
  Pose2D pose;
  pose.x = r.F64();
  pose.y = r.F64();
  pose.theta = r.F64();
  r.Finish();
  return pose;
}

bus::Bytes EncodeScan(const world::LaserScan& scan) {
  Writer w;
  w.U64(scan.stamp_ns);
  w.F64(scan.angle_start);
  w.F64(scan.angle_increment);
  w.U32(static_cast<std::uint32_t>(scan.ranges.size()));
  for (const auto& range : scan.ranges) {
    w.F64(range ? *range : std::numeric_limits<double>::quiet_NaN());
  }
  return w.Take();
}

world::LaserScan DecodeScan(std::span<const std::uint8_t> bytes) {
  Reader r(bytes, "scan");
  world::LaserScan scan;
  scan.stamp_ns = r.U64();
  scan.angle_start = r.F64();
  scan.angle_increment = r.F64();
  const std::uint32_t count = r.U32();
  if (bytes.size() < 28 + std::size_t{8} * count) {
    throw Error(ErrorCode::kTruncatedFrame, "scan payload is truncated");
  }
  scan.ranges.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const double range = r.F64();
    if (std::isnan(range)) {
      scan.ranges.emplace_back(std::nullopt);
    } else {
      scan.ranges.emplace_back(range);
    }
  }
  r.Finish();
  return scan;
}

}  // namespace scaletwin::harness
