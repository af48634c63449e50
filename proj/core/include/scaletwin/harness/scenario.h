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

#ifndef SCALETWIN_HARNESS_SCENARIO_H_
#define SCALETWIN_HARNESS_SCENARIO_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scaletwin/harness/scenario_config.h"
#include "scaletwin/world/occupancy_grid.h"

namespace scaletwin::harness {

// State at the start of one simulation step and the command applied during
// it.
struct TrajectoryRow {
  double t = 0.0;
  Pose2D truth;
  Pose2D estimate;  // SLAM pose, or dead reckoning without SLAM
  double v_cmd = 0.0;
  double v_actual = 0.0;
  double delta_cmd = 0.0;
  double delta_actual = 0.0;
  double motor_rpm = 0.0;  // V_m
  double servo = 0.0;      // phi_s
};

// Per subscriber of one topic. In-process runs have lost == 0; a subscriber
// is balanced when received + dropped == published + injected.
struct TopicCounters {
  std::string topic;
  std::string subscriber;
  std::uint64_t published = 0;
  std::uint64_t injected = 0;
  std::uint64_t received = 0;
  std::uint64_t dropped = 0;
  std::int64_t lost = 0;

  bool Balanced() const { return received + dropped == published + injected; }
};

struct RunLog {
  std::string scenario;
  std::uint64_t seed = 0;
  TaskSet tasks;
  std::int64_t steps = 0;
  std::vector<TrajectoryRow> trajectory;
  std::vector<TopicCounters> counters;
  std::uint64_t scans = 0;
  std::uint64_t pcm_points = 0;
  std::map<std::string, int> slam_status;
  std::map<std::string, int> plan_status;
  std::uint64_t map_snapshots = 0;
  std::uint64_t map_snapshots_skipped = 0;  // too large for the transport
  std::optional<world::OccupancyGrid> map;
  bool goal_reached = false;
  double min_wall_clearance = 0.0;  // m, from the true position
  double wall_seconds = 0.0;
  std::map<std::string, std::string> artifacts;  // kind -> path

  bool Balanced() const;
};

struct RunOptions {
  bool write_artifacts = true;
  // Records the listed topics (all when empty) to this log when set.
  std::string record_path;
  std::vector<std::string> record_topics;
};

// Fixed-step loop over the in-process bus. Each step runs, in order: scan
// simulation, point cloud, SLAM, planner or script, vehicle. Artifacts go
// to cfg.output_dir: trajectory.csv, scans.jsonl, map.pgm + map.yaml,
// run_log.json. Throws Error(kConfigInvalid), Error(kWorldLoadFailure) or
// Error(kIoError).
RunLog RunScenario(const ScenarioConfig& cfg, const RunOptions& options = {});

// Shortest round-trip decimal text of every field, so equal runs give equal
// bytes.
void WriteTrajectoryCsv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
// Throws Error(kMissingTrace) when actuator columns are absent and
// Error(kMalformedLog) on unparseable rows.
std::vector<TrajectoryRow> ReadTrajectoryCsv(std::istream& in);

// Columns t, v_cmd, v_actual, delta_cmd, delta_actual, V_m, phi_s; header
// only for an empty trajectory.
void ExportCycles(std::ostream& out, const std::vector<TrajectoryRow>& rows);
// Reads run_dir/trajectory.csv and writes out_path. Throws
// Error(kMissingTrace) or Error(kIoError).
void ExportCyclesFromRun(const std::string& run_dir, const std::string& out_path);

void WriteRunLogJson(std::ostream& out, const RunLog& log);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_SCENARIO_H_
