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

#include "scaletwin/harness/scenario.h"

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "scaletwin/bus/bus.h"
#include "scaletwin/bus/udp_transport.h"
#include "scaletwin/error.h"
#include "scaletwin/harness/nodes.h"
#include "scaletwin/harness/payloads.h"
#include "scaletwin/harness/record_log.h"
#include "scaletwin/world/map_io.h"
#include "scaletwin/world/scan_log.h"

namespace scaletwin::harness {
namespace {

namespace fs = std::filesystem;

constexpr const char* kTrajectoryColumns[] = {
    "t",         "x",        "y",           "theta",     "est_x",
    "est_y",     "est_theta", "v_cmd",      "v_actual",  "delta_cmd",
    "delta_actual", "V_m",   "phi_s"};
constexpr const char* kCycleColumns[] = {"t",         "v_cmd",        "v_actual",
                                         "delta_cmd", "delta_actual", "V_m",
                                         "phi_s"};

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ stream);
}

std::uint64_t Nanoseconds(std::int64_t tick, double dt) {
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(tick) * dt * 1e9));
}

std::int64_t TicksFor(double seconds, double dt) {
  return std::max<std::int64_t>(1, std::llround(seconds / dt));
}

void AppendNumber(std::string& out, double value) {
  char buffer[32];
  const auto r = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, r.ptr);
}

template <std::size_t N>
void WriteHeader(std::ostream& out, const char* const (&columns)[N]) {
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) out << ',';
    out << columns[i];
  }
  out << '\n';
}

void WriteRow(std::ostream& out, std::initializer_list<double> values) {
  std::string line;
  bool first = true;
  for (double v : values) {
    if (!first) line += ',';
    first = false;
    AppendNumber(line, v);
  }
  line += '\n';
  out << line;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

struct Subscriber {
  std::string name;
  std::shared_ptr<bus::Subscription> subscription;
};

class SimulationLoop {
 public:
  SimulationLoop(const ScenarioConfig& cfg, const RunOptions& options)
      : cfg_(cfg),
        options_(options),
        world_(cfg.BuildWorld()),
        vehicle_(cfg, StreamSeed(cfg.seed, 1)) {
    log_.scenario = cfg.name;
    log_.seed = cfg.seed;
    log_.tasks = cfg.tasks;
    log_.min_wall_clearance = world::DistanceToNearestWall(world_, cfg.start.Translation());
    if (!world_.bounds().Contains(cfg.start.Translation())) {
      throw Error(ErrorCode::kConfigInvalid, "start pose lies outside the world bounds");
    }
    if (cfg.tasks.slam) slam_.emplace(cfg.slam, cfg.start);
    if (cfg.tasks.mpc) planner_.emplace(cfg);
    scan_ticks_ = TicksFor(1.0 / cfg.lidar.scan_freq, cfg.dt);
    plan_ticks_ = TicksFor(cfg.plan_period, cfg.dt);
    map_ticks_ = cfg.map_period > 0.0 ? TicksFor(cfg.map_period, cfg.dt) : 0;
    steps_ = std::llround(cfg.duration / cfg.dt);
  }

  RunLog Run() {
    using Clock = std::chrono::steady_clock;
    const auto wall_start = Clock::now();
    OpenArtifacts();
    Wire();

    std::int64_t tick = 0;
    bool finished = false;
    for (; tick < steps_ && !finished; ++tick) {
      if (cfg_.realtime) {
        std::this_thread::sleep_until(
            wall_start + std::chrono::nanoseconds(Nanoseconds(tick, cfg_.dt)));
      }
      SensorStage(tick);
      PointCloudStage();
      SlamStage(tick);
      ControlStage(tick);
      finished = VehicleStage(tick);
      Drain(monitor_);
    }
    log_.steps = tick;
    // Fold the last odometry into the estimate so the final row is in step
    // with the true pose.
    if (slam_) {
      for (const auto& envelope : slam_odom_->Drain()) {
        slam_->HandleOdometry(DecodeOdometry(envelope->payload), envelope->timestamp_ns);
      }
    }
    log_.trajectory.push_back(Row(static_cast<double>(tick) * cfg_.dt));

    Finish();
    log_.wall_seconds = std::chrono::duration<double>(Clock::now() - wall_start).count();
    WriteArtifacts();
    return std::move(log_);
  }

 private:
  void OpenArtifacts() {
    if (!options_.write_artifacts) return;
    std::error_code ec;
    fs::create_directories(cfg_.output_dir, ec);
    if (ec) {
      throw Error(ErrorCode::kIoError,
                  "cannot create output directory " + cfg_.output_dir + ": " + ec.message());
    }
    if (cfg_.tasks.needs_scans()) {
      const std::string path = (fs::path(cfg_.output_dir) / "scans.jsonl").string();
      scan_log_.open(path, std::ios::trunc);
      if (!scan_log_) throw Error(ErrorCode::kIoError, "cannot write " + path);
      log_.artifacts["scans"] = path;
    }
  }

  void Wire() {
    if (!options_.record_path.empty()) {
      recorder_ = std::make_shared<Recorder>(options_.record_path, options_.record_topics);
      bus_.AttachTransport(recorder_);
      log_.artifacts["record"] = options_.record_path;
    }
    if (cfg_.transport.mode == bus::TransportConfig::Mode::kUdp) {
      udp_ = bus::StartUdpPump(bus_, cfg_.transport);
    }
    const std::size_t depth = cfg_.queue_depth;
    auto subscribe = [&](std::vector<Subscriber>& list, const char* topic,
                         const char* name) {
      list.push_back({name, bus_.Subscribe(topic, depth)});
      return list.back().subscription;
    };
    if (cfg_.tasks.pcm) pcm_scan_ = subscribe(node_subs_, kTopicScan, "pcm");
    if (slam_) {
      slam_odom_ = subscribe(node_subs_, kTopicOdom, "slam");
      slam_scan_ = subscribe(node_subs_, kTopicScan, "slam");
    }
    if (planner_) {
      planner_pose_ = subscribe(node_subs_, kTopicPose, "planner");
      planner_scan_ = subscribe(node_subs_, kTopicScan, "planner");
    }
    vehicle_cmd_ = subscribe(node_subs_, kTopicCmd, "vehicle");
    for (const char* topic : {kTopicCmd, kTopicOdom, kTopicPose, kTopicScan, kTopicMap}) {
      subscribe(monitor_, topic, "monitor");
    }
  }

  void SensorStage(std::int64_t tick) {
    if (!cfg_.tasks.needs_scans() || tick % scan_ticks_ != 0) return;
    const std::uint64_t stamp = Nanoseconds(tick, cfg_.dt);
    world::LaserScan scan =
        world::SimulateScan(world_, vehicle_.state().pose, cfg_.lidar,
                            StreamSeed(cfg_.seed, 1000 + log_.scans), stamp);
    scan.pose_hint = vehicle_.state().pose;
    bus_.Publish(kTopicScan, EncodeScan(scan), stamp);
    if (scan_log_.is_open()) scan_log_ << world::ScanToJsonLine(scan) << '\n';
    ++log_.scans;
  }

  void PointCloudStage() {
    if (!pcm_scan_) return;
    for (const auto& envelope : pcm_scan_->Drain()) {
      const world::LaserScan scan = DecodeScan(envelope->payload);
      // Render the sensor-frame point cloud.
      for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
        if (!scan.ranges[i]) continue;
        const double a = scan.BeamAngle(i);
        cloud_.push_back({*scan.ranges[i] * std::cos(a), *scan.ranges[i] * std::sin(a)});
      }
      log_.pcm_points += cloud_.size();
      cloud_.clear();
    }
  }

  void SlamStage(std::int64_t tick) {
    if (!slam_) return;
    for (const auto& envelope : slam_odom_->Drain()) {
      slam_->HandleOdometry(DecodeOdometry(envelope->payload), envelope->timestamp_ns);
    }
    for (const auto& envelope : slam_scan_->Drain()) {
      slam_->HandleScan(DecodeScan(envelope->payload));
    }
    const std::uint64_t stamp = Nanoseconds(tick, cfg_.dt);
    bus_.Publish(kTopicPose, EncodePose(slam_->pose()), stamp);
    if (map_ticks_ > 0 && tick % map_ticks_ == 0 &&
        slam_->pipeline().scans_integrated() > 0) {
      try {
        bus_.Publish(kTopicMap,
                     world::EncodeGridSnapshot(slam_->pipeline().map().finest()), stamp);
        ++log_.map_snapshots;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPayloadTooLarge) throw;
        ++log_.map_snapshots_skipped;
      }
    }
  }

  void ControlStage(std::int64_t tick) {
    const std::uint64_t stamp = Nanoseconds(tick, cfg_.dt);
    if (planner_) {
      for (const auto& envelope : planner_pose_->Drain()) {
        planner_->HandlePose(DecodePose(envelope->payload));
      }
      for (const auto& envelope : planner_scan_->Drain()) {
        planner_->HandleScan(DecodeScan(envelope->payload));
      }
      if (tick % plan_ticks_ == 0) {
        const auto& s = vehicle_.state();
        const planner::PlanResult plan = planner_->Plan(s.v, s.delta);
        last_plan_status_ = plan.status;
        bus_.Publish(kTopicCmd, EncodeCommand(plan.command), stamp);
      }
      return;
    }
    if (cfg_.script.empty()) return;
    const vehicle::AckermannCommand command = ScriptCommand(cfg_.script, tick, cfg_.dt);
    if (!last_script_command_ || !(*last_script_command_ == command)) {
      bus_.Publish(kTopicCmd, EncodeCommand(command), stamp);
      last_script_command_ = command;
    }
  }

  // Returns true when the run should end after this step.
  bool VehicleStage(std::int64_t tick) {
    for (const auto& envelope : vehicle_cmd_->Drain()) {
      vehicle_.SetCommand(DecodeCommand(envelope->payload));
    }
    log_.trajectory.push_back(Row(static_cast<double>(tick) * cfg_.dt));

    const OdometryMessage odom = vehicle_.Step(cfg_.dt);
    const std::uint64_t stamp = Nanoseconds(tick + 1, cfg_.dt);
    bus_.Publish(kTopicOdom, EncodeOdometry(odom), stamp);
    if (!slam_) bus_.Publish(kTopicPose, EncodePose(vehicle_.state().pose), stamp);

    log_.min_wall_clearance =
        std::min(log_.min_wall_clearance,
                 world::DistanceToNearestWall(world_, vehicle_.state().pose.Translation()));
    if (last_plan_status_ == planner::PlanStatus::kGoalReached) {
      log_.goal_reached = true;
      return cfg_.stop_on_goal && vehicle_.state().v == 0.0;
    }
    return false;
  }

  TrajectoryRow Row(double t) const {
    const auto& s = vehicle_.state();
    const auto motor = vehicle_.actuators();
    TrajectoryRow row;
    row.t = t;
    row.truth = s.pose;
    row.estimate = slam_ ? slam_->pose() : vehicle_.dead_reckoning();
    row.v_cmd = vehicle_.command().v;
    row.v_actual = s.v;
    row.delta_cmd = vehicle_.command().delta;
    row.delta_actual = s.delta;
    row.motor_rpm = motor.rpm;
    row.servo = motor.servo;
    return row;
  }

  static void Drain(const std::vector<Subscriber>& subs) {
    for (const auto& s : subs) s.subscription->Drain();
  }

  void Finish() {
    // Nodes consume what is still queued so every counter settles.
    Drain(node_subs_);
    Drain(monitor_);
    if (udp_) udp_->Stop();
    for (const auto* list : {&node_subs_, &monitor_}) {
      for (const auto& s : *list) {
        const std::string& topic = s.subscription->topic();
        const bus::TopicStats stats = bus_.Stats(topic);
        TopicCounters c;
        c.topic = topic;
        c.subscriber = s.name;
        c.published = stats.published;
        c.injected = stats.injected;
        c.received = s.subscription->received();
        c.dropped = s.subscription->dropped();
        c.lost = udp_ ? udp_->Stats(topic).lost : 0;
        log_.counters.push_back(c);
      }
    }
    if (slam_) {
      log_.slam_status = slam_->status_counts();
      log_.map = slam_->pipeline().map().finest();
    }
    if (planner_) log_.plan_status = planner_->status_counts();
    if (recorder_) recorder_->Flush();
  }

  void WriteArtifacts() {
    if (!options_.write_artifacts) return;
    const fs::path dir(cfg_.output_dir);
    const std::string trajectory = (dir / "trajectory.csv").string();
    {
      std::ofstream out(trajectory, std::ios::trunc);
      if (!out) throw Error(ErrorCode::kIoError, "cannot write " + trajectory);
      WriteTrajectoryCsv(out, log_.trajectory);
    }
    log_.artifacts["trajectory"] = trajectory;
    if (log_.map) {
      const world::MapFiles files = world::SaveGrid(*log_.map, (dir / "map").string());
      log_.artifacts["map_image"] = files.image_path;
      log_.artifacts["map_metadata"] = files.metadata_path;
    }
    const std::string run_log = (dir / "run_log.json").string();
    log_.artifacts["run_log"] = run_log;
    std::ofstream out(run_log, std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + run_log);
    WriteRunLogJson(out, log_);
  }

  const ScenarioConfig& cfg_;
  const RunOptions& options_;
  world::WorldModel world_;
  bus::Bus bus_;
  VehicleNode vehicle_;
  std::optional<SlamNode> slam_;
  std::optional<PlannerNode> planner_;
  std::shared_ptr<Recorder> recorder_;
  std::shared_ptr<bus::UdpTransport> udp_;

  std::vector<Subscriber> node_subs_;
  std::vector<Subscriber> monitor_;
  std::shared_ptr<bus::Subscription> pcm_scan_, slam_odom_, slam_scan_,
      planner_pose_, planner_scan_, vehicle_cmd_;

  std::int64_t steps_ = 0;
  std::int64_t scan_ticks_ = 1;
  std::int64_t plan_ticks_ = 1;
  std::int64_t map_ticks_ = 0;
  std::optional<vehicle::AckermannCommand> last_script_command_;
  std::optional<planner::PlanStatus> last_plan_status_;
  std::vector<Vec2> cloud_;
  std::ofstream scan_log_;
  RunLog log_;
};

}  // namespace

bool RunLog::Balanced() const {
  for (const auto& c : counters) {
    if (!c.Balanced()) return false;
  }
  return true;
}

RunLog RunScenario(const ScenarioConfig& cfg, const RunOptions& options) {
  cfg.Validate();
  SimulationLoop loop(cfg, options);
  return loop.Run();
}

void WriteTrajectoryCsv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  WriteHeader(out, kTrajectoryColumns);
  for (const auto& r : rows) {
    WriteRow(out, {r.t, r.truth.x, r.truth.y, r.truth.theta, r.estimate.x,
                   r.estimate.y, r.estimate.theta, r.v_cmd, r.v_actual,
                   r.delta_cmd, r.delta_actual, r.motor_rpm, r.servo});
  }
}

std::vector<TrajectoryRow> ReadTrajectoryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMissingTrace, "trajectory has no header");
  }
  const auto header = SplitCsv(line);
  auto column = [&](const char* name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(ErrorCode::kMissingTrace, std::string("trajectory lacks column ") + name);
  };
  std::size_t index[std::size(kTrajectoryColumns)];
  for (std::size_t i = 0; i < std::size(kTrajectoryColumns); ++i) {
    index[i] = column(kTrajectoryColumns[i]);
  }
  std::vector<TrajectoryRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    double v[std::size(kTrajectoryColumns)];
    for (std::size_t i = 0; i < std::size(kTrajectoryColumns); ++i) {
      const std::string& f = index[i] < fields.size() ? fields[index[i]] : std::string();
      const auto r = std::from_chars(f.data(), f.data() + f.size(), v[i]);
      if (f.empty() || r.ec != std::errc() || r.ptr != f.data() + f.size()) {
        throw Error(ErrorCode::kMalformedLog,
                    "trajectory line " + std::to_string(line_no) + " is malformed");
      }
    }
    rows.push_back({v[0], {v[1], v[2], v[3]}, {v[4], v[5], v[6]}, v[7], v[8],
                    v[9], v[10], v[11], v[12]});
  }
  return rows;
}

void ExportCycles(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  WriteHeader(out, kCycleColumns);
  for (const auto& r : rows) {
    WriteRow(out, {r.t, r.v_cmd, r.v_actual, r.delta_cmd, r.delta_actual,
                   r.motor_rpm, r.servo});
  }
}

void ExportCyclesFromRun(const std::string& run_dir, const std::string& out_path) {
  const fs::path trajectory = fs::path(run_dir) / "trajectory.csv";
  std::ifstream in(trajectory);
  if (!in) {
    throw Error(ErrorCode::kMissingTrace, "no actuator trace at " + trajectory.string());
  }
  const auto rows = ReadTrajectoryCsv(in);
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + out_path);
  ExportCycles(out, rows);
}

void WriteRunLogJson(std::ostream& out, const RunLog& log) {
  using nlohmann::json;
  json counters = json::array();
  for (const auto& c : log.counters) {
    counters.push_back({{"topic", c.topic},
                        {"subscriber", c.subscriber},
                        {"published", c.published},
                        {"injected", c.injected},
                        {"received", c.received},
                        {"dropped", c.dropped},
                        {"lost", c.lost},
                        {"balanced", c.Balanced()}});
  }
  json j;
  j["scenario"] = log.scenario;
  j["seed"] = log.seed;
  j["tasks"] = log.tasks.Key();
  j["steps"] = log.steps;
  j["scans"] = log.scans;
  j["pcm_points"] = log.pcm_points;
  j["counters"] = counters;
  j["balanced"] = log.Balanced();
  j["slam_status"] = log.slam_status;
  j["plan_status"] = log.plan_status;
  j["map_snapshots"] = log.map_snapshots;
  j["map_snapshots_skipped"] = log.map_snapshots_skipped;
  j["goal_reached"] = log.goal_reached;
  j["min_wall_clearance"] = log.min_wall_clearance;
  j["wall_seconds"] = log.wall_seconds;
  if (!log.trajectory.empty()) {
    const auto& last = log.trajectory.back();
    j["final_truth"] = {last.truth.x, last.truth.y, last.truth.theta};
    j["final_estimate"] = {last.estimate.x, last.estimate.y, last.estimate.theta};
  }
  j["artifacts"] = log.artifacts;
  out << j.dump(2) << '\n';
}

}  // namespace scaletwin::harness
