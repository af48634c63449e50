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

#include "scaletwin/harness/record_log.h"

#include <chrono>
#include <iterator>
#include <limits>
#include <thread>

#include "scaletwin/error.h"
#include "scaletwin/harness/nodes.h"
#include "scaletwin/harness/payloads.h"

namespace scaletwin::harness {

RecordWriter::RecordWriter(const std::string& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw Error(ErrorCode::kIoError, "cannot open record log " + path);
}

void RecordWriter::Append(const bus::Envelope& envelope) {
  const bus::Bytes frame = bus::EncodeEnvelope(envelope);
  const auto n = static_cast<std::uint32_t>(frame.size());
  const char prefix[4] = {static_cast<char>(n), static_cast<char>(n >> 8),
                          static_cast<char>(n >> 16), static_cast<char>(n >> 24)};
  out_.write(prefix, 4);
  out_.write(reinterpret_cast<const char*>(frame.data()),
             static_cast<std::streamsize>(frame.size()));
  if (!out_) throw Error(ErrorCode::kIoError, "write failed on " + path_);
  ++count_;
}

void RecordWriter::Flush() {
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIoError, "flush failed on " + path_);
}

std::vector<bus::Envelope> ReadRecordLog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open record log " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  std::vector<bus::Envelope> out;
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    if (bytes.size() - offset < 4) {
      throw Error(ErrorCode::kMalformedLog, "truncated length prefix at byte " +
                                                std::to_string(offset));
    }
    const std::uint32_t n = std::uint32_t{bytes[offset]} |
                            std::uint32_t{bytes[offset + 1]} << 8 |
                            std::uint32_t{bytes[offset + 2]} << 16 |
                            std::uint32_t{bytes[offset + 3]} << 24;
    offset += 4;
    if (bytes.size() - offset < n) {
      throw Error(ErrorCode::kMalformedLog,
                  "record " + std::to_string(out.size()) + " is truncated");
    }
    try {
      out.push_back(bus::DecodeEnvelope(std::span(bytes).subspan(offset, n)));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedLog,
                  "record " + std::to_string(out.size()) + ": " + e.what());
    }
    offset += n;
  }
  return out;
}

Recorder::Recorder(const std::string& path, std::vector<std::string> topics)
    : topics_(topics.begin(), topics.end()), writer_(path) {}

void Recorder::Send(const bus::Envelope& envelope) {
  if (!topics_.empty() && !topics_.contains(envelope.topic)) return;
  std::lock_guard lock(mutex_);
  writer_.Append(envelope);
}

std::size_t Recorder::max_payload_bytes() const {
  // The length prefix bounds a record to 4 GiB.
  return std::numeric_limits<std::uint32_t>::max() - 512;
}

void Recorder::Flush() {
  std::lock_guard lock(mutex_);
  writer_.Flush();
}

std::uint64_t Recorder::count() const {
  std::lock_guard lock(mutex_);
  return writer_.count();
}

ReplayStats Replay(const std::vector<bus::Envelope>& log, bus::Bus& bus,
                   double speed) {
  if (!(speed >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "replay speed must be >= 0");
  using Clock = std::chrono::steady_clock;
  ReplayStats stats;
  const auto start = Clock::now();
  const std::uint64_t t0 = log.empty() ? 0 : log.front().timestamp_ns;
  for (const auto& envelope : log) {
    if (speed > 0.0 && envelope.timestamp_ns > t0) {
      const double offset_ns = static_cast<double>(envelope.timestamp_ns - t0) / speed;
      std::this_thread::sleep_until(
          start + std::chrono::nanoseconds(static_cast<std::int64_t>(offset_ns)));
    }
    bus.Inject(envelope);
    ++stats.envelopes;
  }
  stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return stats;
}

ReplayStats Replay(const std::string& path, bus::Bus& bus, double speed) {
  return Replay(ReadRecordLog(path), bus, speed);
}

SlamReplayResult ReplaySlam(const std::vector<bus::Envelope>& log,
                            const ScenarioConfig& cfg) {
  SlamNode node(cfg.slam, cfg.start);
  SlamReplayResult result{.map = node.pipeline().map().finest(), .pose = cfg.start};
  for (const auto& envelope : log) {
    if (envelope.topic == kTopicOdom) {
      node.HandleOdometry(DecodeOdometry(envelope.payload), envelope.timestamp_ns);
      ++result.odometry_messages;
    } else if (envelope.topic == kTopicScan) {
      node.HandleScan(DecodeScan(envelope.payload));
      ++result.scans;
    }
  }
  result.map = node.pipeline().map().finest();
  result.pose = node.pose();
  return result;
}

}  // namespace scaletwin::harness
