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

// Command-line front end: run, profile, record, replay, export.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scaletwin/bus/bus.h"
#include "scaletwin/error.h"
#include "scaletwin/harness/exit_status.h"
#include "scaletwin/harness/profiler.h"
#include "scaletwin/harness/record_log.h"
#include "scaletwin/harness/scenario.h"
#include "scaletwin/world/map_io.h"

namespace {

namespace fs = std::filesystem;
using namespace scaletwin;
using namespace scaletwin::harness;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  auto* config = cmd->add_option("-c,--config", flags.config, "scenario YAML file");
  if (config_required) config->required();
  cmd->add_option("-s,--seed", flags.seed, "override the scenario seed");
  cmd->add_option("-o,--out", flags.out, "output directory");
}

ScenarioConfig LoadConfig(const CommonFlags& flags) {
  ScenarioConfig cfg = LoadScenarioConfig(flags.config);
  if (flags.seed) cfg.seed = *flags.seed;
  if (!flags.out.empty()) cfg.output_dir = flags.out;
  return cfg;
}

void PrintRunSummary(const RunLog& log) {
  std::cout << "scenario " << log.scenario << " seed " << log.seed << ": "
            << log.steps << " steps, " << log.scans << " scans, "
            << (log.Balanced() ? "counters balanced" : "COUNTERS UNBALANCED") << '\n';
  if (!log.trajectory.empty()) {
    const auto& last = log.trajectory.back();
    std::cout << "final pose (" << last.truth.x << ", " << last.truth.y << ", "
              << last.truth.theta << "), estimate (" << last.estimate.x << ", "
              << last.estimate.y << ", " << last.estimate.theta << ")\n";
  }
  if (!log.plan_status.empty()) {
    std::cout << "goal " << (log.goal_reached ? "reached" : "not reached")
              << ", min wall clearance " << log.min_wall_clearance << " m\n";
  }
  for (const auto& [kind, path] : log.artifacts) {
    std::cout << "  " << kind << ": " << path << '\n';
  }
}

int Run(const CommonFlags& flags) {
  const ScenarioConfig cfg = LoadConfig(flags);
  PrintRunSummary(RunScenario(cfg));
  return kExitOk;
}

int Profile(const CommonFlags& flags) {
  const ScenarioConfig cfg = LoadConfig(flags);
  const auto rows = ProfileTasks(cfg);
  fs::create_directories(cfg.output_dir);
  const std::string path = (fs::path(cfg.output_dir) / "profile.csv").string();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  WriteProfileCsv(out, rows);
  WriteProfileCsv(std::cout, rows);
  std::cout << "CPU share of " << AvailableCpus() << " available CPU(s); written to "
            << path << '\n';
  for (const auto& row : rows) {
    if (!row.available) {
      throw Error(ErrorCode::kSamplingUnsupported, "no process counters for '" + row.label + "'");
    }
  }
  return kExitOk;
}

int Record(const CommonFlags& flags, const std::vector<std::string>& topics,
           std::string log_path) {
  const ScenarioConfig cfg = LoadConfig(flags);
  fs::create_directories(cfg.output_dir);
  if (log_path.empty()) log_path = (fs::path(cfg.output_dir) / "record.log").string();
  RunOptions options;
  options.record_path = log_path;
  options.record_topics = topics;
  const RunLog log = RunScenario(cfg, options);
  PrintRunSummary(log);
  std::cout << "recorded " << ReadRecordLog(log_path).size() << " envelopes to "
            << log_path << '\n';
  return kExitOk;
}

int Replay(const CommonFlags& flags, const std::string& log_path, double speed) {
  const auto log = ReadRecordLog(log_path);
  bus::Bus bus;
  std::map<std::string, std::shared_ptr<bus::Subscription>> subs;
  for (const auto& e : log) {
    if (!subs.contains(e.topic)) subs[e.topic] = bus.Subscribe(e.topic, log.size() + 1);
  }
  const ReplayStats stats = harness::Replay(log, bus, speed);
  std::cout << "replayed " << stats.envelopes << " envelopes in " << stats.wall_seconds
            << " s\n";
  for (const auto& [topic, sub] : subs) {
    std::cout << "  " << topic << ": " << sub->Drain().size() << '\n';
  }
  if (!flags.config.empty()) {
    const ScenarioConfig cfg = LoadConfig(flags);
    const SlamReplayResult slam = ReplaySlam(log, cfg);
    fs::create_directories(cfg.output_dir);
    const auto files =
        world::SaveGrid(slam.map, (fs::path(cfg.output_dir) / "replay_map").string());
    std::cout << "SLAM replay: " << slam.scans << " scans, map " << files.image_path << '\n';
  }
  return kExitOk;
}

int Export(const CommonFlags& flags, std::string run_dir) {
  std::string out_dir = flags.out;
  if (run_dir.empty()) {
    if (flags.config.empty()) {
      throw Error(ErrorCode::kConfigInvalid, "export needs --run-dir or --config");
    }
    run_dir = LoadScenarioConfig(flags.config).output_dir;
  }
  if (out_dir.empty()) out_dir = run_dir;
  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / "cycles.csv").string();
  ExportCyclesFromRun(run_dir, path);
  std::cout << "wrote " << path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scaletwin: scaled-vehicle digital twin"};
  app.require_subcommand(1);

  CommonFlags run_flags, profile_flags, record_flags, replay_flags, export_flags;
  auto* run = app.add_subcommand("run", "run a scenario and write its artifacts");
  AddCommonFlags(run, run_flags, true);

  auto* profile = app.add_subcommand("profile", "CPU/memory profile of the task ladder");
  AddCommonFlags(profile, profile_flags, true);

  std::vector<std::string> topics;
  std::string record_log;
  auto* record = app.add_subcommand("record", "run a scenario and record bus traffic");
  AddCommonFlags(record, record_flags, true);
  record->add_option("-t,--topics", topics, "topics to record (default: all)");
  record->add_option("-l,--log", record_log, "record log path (default: <out>/record.log)");

  std::string replay_log;
  double speed = 1.0;
  auto* replay = app.add_subcommand("replay", "republish a record log");
  AddCommonFlags(replay, replay_flags, false);
  replay->add_option("-l,--log", replay_log, "record log to replay")->required();
  replay->add_option("--speed", speed, "time scale; 0 replays unpaced")
      ->check(CLI::NonNegativeNumber);

  std::string run_dir;
  auto* exporter = app.add_subcommand("export", "write actuator cycle CSV from a run");
  AddCommonFlags(exporter, export_flags, false);
  exporter->add_option("-r,--run-dir", run_dir, "directory holding trajectory.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return Run(run_flags);
    if (*profile) return Profile(profile_flags);
    if (*record) return Record(record_flags, topics, record_log);
    if (*replay) return Replay(replay_flags, replay_log, speed);
    if (*exporter) return Export(export_flags, run_dir);
  } catch (const Error& e) {
    const ExitStatus status = ExitStatusFor(e.code());
    std::cerr << "error [" << status.category << "]: " << e.what() << '\n';
    return status.code;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error [io]: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error [runtime]: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
