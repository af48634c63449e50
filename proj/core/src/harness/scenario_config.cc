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

#include "scaletwin/harness/scenario_config.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scaletwin/error.h"

namespace scaletwin::harness {
namespace {

namespace fs = std::filesystem;

struct TaskName {
  const char* key;
  const char* label;
  bool TaskSet::*flag;
};

constexpr TaskName kTaskNames[] = {
    {"actuator", "Actuator Control", &TaskSet::actuator},
    {"pcm", "PCM", &TaskSet::pcm},
    {"slam", "SLAM", &TaskSet::slam},
    {"mpc", "MPC", &TaskSet::mpc},
};

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kConfigInvalid, message);
}

template <typename T>
void Read(const YAML::Node& node, const char* key, T& out) {
  if (!node || !node[key]) return;
  try {
    out = node[key].as<T>();
  } catch (const YAML::Exception& e) {
    Invalid(std::string("bad value for '") + key + "': " + e.what());
  }
}

Vec2 ReadVec2(const YAML::Node& node, const char* what) {
  const auto v = node.as<std::vector<double>>();
  if (v.size() != 2) Invalid(std::string(what) + " needs [x, y]");
  return {v[0], v[1]};
}

Pose2D ReadPose(const YAML::Node& node, const char* what) {
  const auto v = node.as<std::vector<double>>();
  if (v.size() != 3) Invalid(std::string(what) + " needs [x, y, theta]");
  return {v[0], v[1], v[2]};
}

Eigen::Vector3d ReadVector3(const YAML::Node& node, const char* what) {
  const auto v = node.as<std::vector<double>>();
  if (v.size() != 3) Invalid(std::string(what) + " needs three values");
  return {v[0], v[1], v[2]};
}

std::vector<double> ScaledCandidates(const std::vector<double>& fractions,
                                     double scale) {
  std::vector<double> out;
  out.reserve(fractions.size());
  for (double f : fractions) out.push_back(f * scale);
  return out;
}

std::vector<ScriptSegment> ReadScript(const YAML::Node& node) {
  if (node.IsScalar()) {
    const auto name = node.as<std::string>();
    if (name == "velocity_cycle") return VelocityCycleScript();
    if (name == "steer_sweep") return SteerSweepScript();
    Invalid("unknown builtin script '" + name + "'");
  }
  std::vector<ScriptSegment> script;
  for (const auto& item : node) {
    ScriptSegment s;
    Read(item, "duration", s.duration);
    Read(item, "v", s.v);
    Read(item, "delta", s.delta);
    script.push_back(s);
  }
  return script;
}

void AddBoxSegments(std::vector<world::Segment>& out, Vec2 lo, Vec2 hi) {
  const Vec2 a{lo.x, lo.y}, b{hi.x, lo.y}, c{hi.x, hi.y}, d{lo.x, hi.y};
  out.push_back({a, b});
  out.push_back({b, c});
  out.push_back({c, d});
  out.push_back({d, a});
}

void ParseWorld(const YAML::Node& node, const std::string& base_dir,
                ScenarioConfig& cfg) {
  if (!node) return;
  if (node.IsScalar()) {
    cfg.world_name = node.as<std::string>();
  } else if (node["file"]) {
    cfg.world_name = node["file"].as<std::string>();
    cfg.world_is_file = true;
  } else {
    Read(node, "builtin", cfg.world_name);
  }
  if (!cfg.world_is_file && !world::IsBuiltinWorld(cfg.world_name)) {
    // A bare string that is not a builtin is taken as a file.
    cfg.world_is_file = true;
  }
  if (cfg.world_is_file) {
    fs::path path(cfg.world_name);
    if (path.is_relative()) path = fs::path(base_dir) / path;
    if (!fs::exists(path)) {
      throw Error(ErrorCode::kWorldLoadFailure,
                  "world file not found: " + path.string());
    }
    cfg.world_name = path.lexically_normal().string();
  }
  if (node.IsMap() && node["boxes"]) {
    for (const auto& box : node["boxes"]) {
      const auto v = box.as<std::vector<double>>();
      if (v.size() != 4 || !(v[0] < v[2]) || !(v[1] < v[3])) {
        Invalid("boxes need [xmin, ymin, xmax, ymax] with min < max");
      }
      cfg.boxes.push_back({{v[0], v[1]}, {v[2], v[3]}});
    }
  }
}

void ParseTransport(const YAML::Node& node, bus::TransportConfig& out) {
  if (!node) return;
  std::string mode = "inproc";
  Read(node, "mode", mode);
  if (mode == "inproc") {
    out.mode = bus::TransportConfig::Mode::kInProcess;
  } else if (mode == "udp") {
    out.mode = bus::TransportConfig::Mode::kUdp;
  } else {
    Invalid("transport mode must be inproc or udp");
  }
  if (node["bind"]) out.bind_address = bus::Endpoint::Parse(node["bind"].as<std::string>());
  if (node["peers"]) {
    for (const auto& peer : node["peers"]) {
      out.peers.push_back(bus::Endpoint::Parse(peer.as<std::string>()));
    }
  }
}

void ParsePlanner(const YAML::Node& node, ScenarioConfig& cfg) {
  if (!node) return;
  Read(node, "horizon", cfg.mpc.horizon);
  Read(node, "dt", cfg.mpc.dt);
  Read(node, "control_weight", cfg.mpc.control_weight);
  Read(node, "approach_gain", cfg.mpc.approach_gain);
  Read(node, "goal_tolerance", cfg.mpc.goal_tolerance);
  Read(node, "v_ref", cfg.mpc.v_ref);
  // Candidates are fractions of v_ref and of the chassis steering limit.
  std::vector<double> speeds{0.25, 0.5, 1.0};
  Read(node, "speed_fractions", speeds);
  cfg.mpc.speed_candidates = ScaledCandidates(speeds, cfg.mpc.v_ref);
  int steer_steps = 3;
  Read(node, "steer_steps", steer_steps);
  if (steer_steps < 1) Invalid("steer_steps must be >= 1");
  cfg.mpc.steer_candidates.clear();
  for (int i = -steer_steps; i <= steer_steps; ++i) {
    cfg.mpc.steer_candidates.push_back(
        cfg.chassis.max_steer * (static_cast<double>(i) / steer_steps));
  }
  Read(node, "plan_period", cfg.plan_period);
  Read(node, "stop_on_goal", cfg.stop_on_goal);
  Read(node, "k_att", cfg.apf.k_att);
  Read(node, "k_rep", cfg.apf.k_rep);
  Read(node, "d0", cfg.apf.d0);
  Read(node, "cluster_eps", cfg.obstacles.cluster_eps);
  Read(node, "min_radius", cfg.obstacles.min_radius);
  Read(node, "max_radius", cfg.obstacles.max_radius);
}

void ParseSlam(const YAML::Node& node, ScenarioConfig& cfg) {
  if (!node) return;
  Read(node, "resolution", cfg.slam.map.resolution);
  Read(node, "levels", cfg.slam.map.levels);
  Read(node, "width", cfg.slam.map.width_m);
  Read(node, "height", cfg.slam.map.height_m);
  Read(node, "tolerance", cfg.slam.match.tolerance);
  Read(node, "max_iterations", cfg.slam.match.max_iterations);
  Read(node, "innovation_gate", cfg.slam.innovation_gate);
  if (node["process_noise_rate"]) {
    cfg.slam.process_noise_rate = ReadVector3(node["process_noise_rate"], "process_noise_rate");
  }
  if (node["measurement_floor"]) {
    cfg.slam.measurement_floor = ReadVector3(node["measurement_floor"], "measurement_floor");
  }
  Read(node, "map_period", cfg.map_period);
}

void ParseProfile(const YAML::Node& node, ProfileConfig& out) {
  if (!node) return;
  Read(node, "duration", out.duration);
  Read(node, "sample_hz", out.sample_hz);
  Read(node, "calibration", out.calibration);
  if (node["ladder"]) {
    out.ladder.clear();
    for (const auto& row : node["ladder"]) {
      out.ladder.push_back(TaskSet::Parse(row.as<std::vector<std::string>>()));
    }
  }
}

}  // namespace

std::string TaskSet::Label() const {
  std::vector<std::string> parts;
  for (const auto& t : kTaskNames) {
    if (this->*t.flag) parts.emplace_back(t.label);
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += (i + 1 == parts.size()) ? " & " : ", ";
    out += parts[i];
  }
  return out;
}

std::string TaskSet::Key() const {
  std::string out;
  for (const auto& t : kTaskNames) {
    if (!(this->*t.flag)) continue;
    if (!out.empty()) out += '+';
    out += t.key;
  }
  return out;
}

TaskSet TaskSet::Parse(const std::vector<std::string>& names) {
  TaskSet set;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& t : kTaskNames) {
      if (name == t.key) {
        set.*t.flag = true;
        found = true;
      }
    }
    if (!found) Invalid("unknown task '" + name + "'");
  }
  return set;
}

std::vector<ScriptSegment> VelocityCycleScript() {
  return {{0.25, 0.0, 0.0}, {1.5, 5.0, 0.0}, {2.25, -5.0, 0.0}, {1.5, 0.0, 0.0}};
}

std::vector<ScriptSegment> SteerSweepScript() {
  return {{0.1, 0.0, 0.0}, {0.3, 0.0, 0.36}, {0.3, 0.0, -0.36}, {0.3, 0.0, 0.0}};
}

double ScriptDuration(const std::vector<ScriptSegment>& script) {
  double total = 0.0;
  for (const auto& s : script) total += s.duration;
  return total;
}

void ScenarioConfig::Validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) Invalid("duration must be > 0");
  if (!(dt > 0.0) || dt > duration) Invalid("dt must be in (0, duration]");
  if (tasks.empty()) Invalid("task set must be non-empty");
  if (tasks.mpc && !goal) Invalid("the mpc task needs a goal");
  if (!(plan_period > 0.0)) Invalid("plan_period must be > 0");
  if (!(map_period >= 0.0)) Invalid("map_period must be >= 0");
  if (queue_depth < 1) Invalid("queue_depth must be >= 1");
  for (const auto& s : script) {
    if (!(s.duration > 0.0)) Invalid("script segments need duration > 0");
  }
  try {
    chassis.Validate();
    calibration.Validate();
    lidar.Validate();
    mpc.Validate(chassis);
    apf.Validate();
  } catch (const Error& e) {
    Invalid(e.what());
  }
  transport.Validate();
  if (!(odometry_noise.sigma_v >= 0.0) || !(odometry_noise.sigma_omega >= 0.0)) {
    Invalid("odometry noise must be >= 0");
  }
  for (const auto& p : profile.ladder) {
    if (p.empty()) Invalid("profile ladder rows must be non-empty");
  }
  if (!(profile.duration > 0.0) || !(profile.sample_hz > 0.0)) {
    Invalid("profile duration and sample_hz must be > 0");
  }
}

world::WorldModel ScenarioConfig::BuildWorld() const {
  world::WorldModel base = world_is_file ? world::LoadWorldFile(world_name)
                                         : world::BuiltinWorld(world_name);
  if (boxes.empty()) return base;
  std::vector<world::Segment> segments = base.segments();
  for (const auto& [lo, hi] : boxes) AddBoxSegments(segments, lo, hi);
  return world::WorldModel(std::move(segments), base.bounds());
}

ScenarioConfig ParseScenarioConfig(const std::string& yaml,
                                   const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml);
  } catch (const YAML::Exception& e) {
    Invalid(std::string("unparseable config: ") + e.what());
  }
  if (!root.IsMap()) Invalid("config must be a mapping");

  ScenarioConfig cfg;
  try {
    Read(root, "name", cfg.name);
    Read(root, "seed", cfg.seed);
    Read(root, "duration", cfg.duration);
    Read(root, "dt", cfg.dt);
    Read(root, "realtime", cfg.realtime);
    Read(root, "queue_depth", cfg.queue_depth);
    Read(root, "output_dir", cfg.output_dir);
    if (root["tasks"]) {
      cfg.tasks = TaskSet::Parse(root["tasks"].as<std::vector<std::string>>());
    }
    ParseWorld(root["world"], base_dir, cfg);
    if (root["start"]) cfg.start = ReadPose(root["start"], "start");
    if (root["goal"]) cfg.goal = ReadVec2(root["goal"], "goal");
    if (root["script"]) cfg.script = ReadScript(root["script"]);

    if (const auto c = root["chassis"]) {
      Read(c, "wheelbase", cfg.chassis.wheelbase);
      Read(c, "track", cfg.chassis.track);
      Read(c, "max_speed", cfg.chassis.max_speed);
      Read(c, "min_speed", cfg.chassis.min_speed);
      Read(c, "max_steer", cfg.chassis.max_steer);
      Read(c, "max_accel", cfg.chassis.max_accel);
      Read(c, "max_steer_rate", cfg.chassis.max_steer_rate);
    }
    if (const auto c = root["calibration"]) {
      Read(c, "rpm_per_mps", cfg.calibration.rpm_per_mps);
      Read(c, "rpm_offset", cfg.calibration.rpm_offset);
      Read(c, "servo_per_rad", cfg.calibration.servo_per_rad);
      Read(c, "servo_offset", cfg.calibration.servo_offset);
    }
    if (const auto c = root["odometry_noise"]) {
      Read(c, "sigma_v", cfg.odometry_noise.sigma_v);
      Read(c, "sigma_omega", cfg.odometry_noise.sigma_omega);
    }
    if (const auto c = root["lidar"]) {
      Read(c, "min_range", cfg.lidar.min_range);
      Read(c, "max_range", cfg.lidar.max_range);
      Read(c, "scan_freq", cfg.lidar.scan_freq);
      Read(c, "range_rate", cfg.lidar.range_rate);
      Read(c, "noise_sigma", cfg.lidar.noise_sigma);
    }
    // Steering candidates follow the chassis limit, so planner defaults are
    // rebuilt after the chassis is known.
    cfg.mpc = planner::DefaultMpcConfig(cfg.chassis);
    ParsePlanner(root["planner"], cfg);
    ParseSlam(root["slam"], cfg);
    ParseTransport(root["transport"], cfg.transport);
    ParseProfile(root["profile"], cfg.profile);
  } catch (const YAML::Exception& e) {
    Invalid(std::string("bad config: ") + e.what());
  }
  if (cfg.profile.ladder.empty()) cfg.profile.ladder.push_back(cfg.tasks);
  cfg.Validate();
  return cfg;
}

ScenarioConfig LoadScenarioConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read config " + path);
  std::stringstream text;
  text << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return ParseScenarioConfig(text.str(), parent.empty() ? "." : parent.string());
}

}  // namespace scaletwin::harness
