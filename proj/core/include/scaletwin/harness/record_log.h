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

#ifndef SCALETWIN_HARNESS_RECORD_LOG_H_
#define SCALETWIN_HARNESS_RECORD_LOG_H_

#include <cstdint>
#include <fstream>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "scaletwin/bus/bus.h"
#include "scaletwin/harness/scenario_config.h"
#include "scaletwin/world/occupancy_grid.h"

// Record log: a plain concatenation of records, each a u32 little-endian
// byte count followed by one wire-format envelope frame. No file header, so
// logs can be appended to and concatenated.
namespace scaletwin::harness {

// Appends envelopes to a record log. Throws Error(kIoError).
class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path);
  void Append(const bus::Envelope& envelope);
  void Flush();
  std::uint64_t count() const { return count_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::uint64_t count_ = 0;
};

// Throws Error(kIoError) when the file cannot be opened and
// Error(kMalformedLog) on a truncated record or undecodable frame.
std::vector<bus::Envelope> ReadRecordLog(const std::string& path);

// Bus tap writing every published envelope on the selected topics (all
// topics when empty) in publish order. Has no payload limit.
class Recorder : public bus::Transport {
 public:
  Recorder(const std::string& path, std::vector<std::string> topics);

  void Send(const bus::Envelope& envelope) override;
  std::size_t max_payload_bytes() const override;

  void Flush();
  std::uint64_t count() const;

 private:
  std::set<std::string, std::less<>> topics_;
  mutable std::mutex mutex_;
  RecordWriter writer_;
};

struct ReplayStats {
  std::uint64_t envelopes = 0;
  double wall_seconds = 0.0;
};

// Injects the logged envelopes into `bus` in file order, keeping their
// sequence numbers. With speed > 0 each one is released at its original
// offset from the first timestamp divided by speed; speed == 0 replays
// without pacing. Throws Error(kInvalidArgument) on negative speed.
ReplayStats Replay(const std::vector<bus::Envelope>& log, bus::Bus& bus,
                   double speed);
ReplayStats Replay(const std::string& path, bus::Bus& bus, double speed);

struct SlamReplayResult {
  world::OccupancyGrid map;
  Pose2D pose;
  std::uint64_t odometry_messages = 0;
  std::uint64_t scans = 0;
};

// Replays the "odom" and "scan" envelopes of a log through a SLAM node
// configured by `cfg`, reproducing the map of the recorded run.
SlamReplayResult ReplaySlam(const std::vector<bus::Envelope>& log,
                            const ScenarioConfig& cfg);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_RECORD_LOG_H_
