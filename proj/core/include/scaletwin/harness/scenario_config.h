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

#ifndef SCALETWIN_HARNESS_SCENARIO_CONFIG_H_
#define SCALETWIN_HARNESS_SCENARIO_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scaletwin/ackermann.h"
#include "scaletwin/bus/udp_transport.h"
#include "scaletwin/geometry.h"
#include "scaletwin/planner/apf.h"
#include "scaletwin/planner/mpc.h"
#include "scaletwin/planner/obstacles.h"
#include "scaletwin/slam/slam_pipeline.h"
#include "scaletwin/vehicle/actuators.h"
#include "scaletwin/vehicle/odometry.h"
#include "scaletwin/world/lidar.h"
#include "scaletwin/world/world_model.h"

namespace scaletwin::harness {

// Autonomy tasks that can be switched on per run. Scans are simulated
// whenever any of pcm, slam or mpc is enabled.
struct TaskSet {
  bool actuator = false;
  bool pcm = false;
  bool slam = false;
  bool mpc = false;

  bool empty() const { return !actuator && !pcm && !slam && !mpc; }
  bool needs_scans() const { return pcm || slam || mpc; }
  // "Actuator Control", "Actuator Control & PCM",
  // "Actuator Control, PCM & SLAM", ...
  std::string Label() const;
  // Short form used in configs and file names: "actuator+pcm+slam".
  std::string Key() const;
  // Throws Error(kConfigInvalid) on unknown task names.
  static TaskSet Parse(const std::vector<std::string>& names);

  friend bool operator==(const TaskSet&, const TaskSet&) = default;
};

// Held command for a fixed duration.
struct ScriptSegment {
  double duration = 0.0;  // s
  double v = 0.0;         // m/s
  double delta = 0.0;     // rad
};

// 0 -> 5 -> -5 -> 0 m/s at zero steering.
std::vector<ScriptSegment> VelocityCycleScript();
// 0 -> 0.36 -> -0.36 -> 0 rad at standstill.
std::vector<ScriptSegment> SteerSweepScript();
double ScriptDuration(const std::vector<ScriptSegment>& script);

struct ProfileConfig {
  std::vector<TaskSet> ladder;
  double duration = 5.0;      // s per row
  double sample_hz = 10.0;
  bool calibration = true;    // add the idle and busy-spin rows
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  double duration = 10.0;  // s
  double dt = 0.01;        // s, simulation step
  TaskSet tasks;

  std::string world_name = "square4";  // builtin or resolved file path
  bool world_is_file = false;
  // Extra axis-aligned box obstacles: (min corner, max corner).
  std::vector<std::pair<Vec2, Vec2>> boxes;

  Pose2D start;
  std::optional<Vec2> goal;
  std::vector<ScriptSegment> script;

  ChassisParams chassis = DefaultChassis();
  vehicle::ActuatorCalibration calibration = vehicle::DefaultCalibration();
  vehicle::OdometryNoise odometry_noise;
  world::LidarSpec lidar;

  slam::SlamConfig slam;
  // Period of "map" snapshots; 0 disables them.
  double map_period = 1.0;  // s

  planner::MpcConfig mpc = planner::DefaultMpcConfig(DefaultChassis());
  planner::ApfParams apf;
  planner::ObstacleExtractionConfig obstacles;
  // Replanning period, rounded to whole simulation steps.
  double plan_period = 0.05;  // s
  bool stop_on_goal = true;

  bus::TransportConfig transport;
  std::size_t queue_depth = 256;
  std::string output_dir = "out";
  // Pace the loop against the wall clock.
  bool realtime = false;

  ProfileConfig profile;

  // Throws Error(kConfigInvalid).
  void Validate() const;
  // Builtin or file world plus the configured boxes. Throws
  // Error(kWorldLoadFailure).
  world::WorldModel BuildWorld() const;
};

// Parses YAML text. Relative world file paths are resolved against
// `base_dir` and must exist. Throws Error(kConfigInvalid) or
// Error(kWorldLoadFailure).
ScenarioConfig ParseScenarioConfig(const std::string& yaml,
                                   const std::string& base_dir = ".");
// Throws Error(kIoError) when the file cannot be read.
ScenarioConfig LoadScenarioConfig(const std::string& path);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_SCENARIO_CONFIG_H_
