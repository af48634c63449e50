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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "scaletwin/error.h"
#include "scaletwin/harness/scenario.h"
#include "scaletwin/harness/scenario_config.h"

namespace scaletwin::harness {
namespace {

namespace fs = std::filesystem;

RunOptions NoArtifacts() {
  RunOptions options;
  options.write_artifacts = false;
  return options;
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("scaletwin_run_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// First row index at which `value(row)` equals `target`, at or after `from`.
template <typename F>
std::size_t FirstAt(const std::vector<TrajectoryRow>& rows, std::size_t from, F value,
                    double target) {
  for (std::size_t i = from; i < rows.size(); ++i) {
    if (value(rows[i]) == target) return i;
  }
  return rows.size();
}

TEST(RunScenarioTest, VelocityCycleTiming) {
  ScenarioConfig cfg = LoadScenarioConfig(std::string(SCALETWIN_CONFIG_DIR) +
                                          "/velocity_cycle.yaml");
  const RunLog log = RunScenario(cfg, NoArtifacts());
  const auto& rows = log.trajectory;
  ASSERT_FALSE(rows.empty());
  auto v_cmd = [](const TrajectoryRow& r) { return r.v_cmd; };
  auto v_act = [](const TrajectoryRow& r) { return r.v_actual; };
  const std::size_t up_cmd = FirstAt(rows, 0, v_cmd, 5.0);
  const std::size_t up_done = FirstAt(rows, up_cmd, v_act, 5.0);
  ASSERT_LT(up_done, rows.size());
  EXPECT_NEAR(rows[up_done].t - rows[up_cmd].t, 0.75, cfg.dt + 1e-9);

  const std::size_t down_cmd = FirstAt(rows, up_done, v_cmd, -5.0);
  const std::size_t down_done = FirstAt(rows, down_cmd, v_act, -5.0);
  ASSERT_LT(down_done, rows.size());
  EXPECT_NEAR(rows[down_done].t - rows[down_cmd].t, 1.50, cfg.dt + 1e-9);

  // Accelerating segments have the rate-limit slope.
  for (std::size_t i = up_cmd + 1; i + 1 < up_done; ++i) {
    EXPECT_NEAR((rows[i + 1].v_actual - rows[i].v_actual) / cfg.dt, cfg.chassis.max_accel,
                1e-6);
  }
  EXPECT_EQ(rows.back().v_actual, 0.0);
  // Motor signal tracks the actual speed through the affine map.
  for (const auto& r : rows) {
    EXPECT_NEAR(r.motor_rpm,
                cfg.calibration.rpm_per_mps * r.v_actual + cfg.calibration.rpm_offset, 1e-6);
  }
  EXPECT_TRUE(log.Balanced());
}

TEST(RunScenarioTest, SteerSweepTiming) {
  ScenarioConfig cfg =
      LoadScenarioConfig(std::string(SCALETWIN_CONFIG_DIR) + "/steer_sweep.yaml");
  const RunLog log = RunScenario(cfg, NoArtifacts());
  const auto& rows = log.trajectory;
  auto d_cmd = [](const TrajectoryRow& r) { return r.delta_cmd; };
  auto d_act = [](const TrajectoryRow& r) { return r.delta_actual; };
  const std::size_t cmd = FirstAt(rows, 0, d_cmd, 0.36);
  const std::size_t done = FirstAt(rows, cmd, d_act, 0.36);
  ASSERT_LT(done, rows.size());
  EXPECT_NEAR(rows[done].t - rows[cmd].t, 0.069, cfg.dt + 1e-9);
}

TEST(RunScenarioTest, TenScansPerSecondAtTenHertz) {
  ScenarioConfig cfg = ParseScenarioConfig(
      "tasks: [actuator, pcm]\nduration: 1.0\ndt: 0.01\nlidar: {scan_freq: 10}\n");
  const RunLog log = RunScenario(cfg, NoArtifacts());
  EXPECT_EQ(log.scans, 10u);
  bool found = false;
  for (const auto& c : log.counters) {
    if (c.topic == "scan") {
      found = true;
      EXPECT_EQ(c.published, 10u);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(log.Balanced());
}

TEST(RunScenarioTest, SameSeedGivesIdenticalCsv) {
  ScenarioConfig cfg = ParseScenarioConfig(R"(
tasks: [actuator, pcm, slam]
duration: 2.0
dt: 0.01
odometry_noise: {sigma_v: 0.05, sigma_omega: 0.05}
lidar: {noise_sigma: 0.01}
script: [{duration: 2.0, v: 0.5, delta: 0.2}]
)");
  const fs::path dir = ScratchDir("determinism");
  cfg.output_dir = (dir / "a").string();
  const RunLog a = RunScenario(cfg);
  cfg.output_dir = (dir / "b").string();
  const RunLog b = RunScenario(cfg);
  const std::string csv_a = Slurp(a.artifacts.at("trajectory"));
  EXPECT_FALSE(csv_a.empty());
  EXPECT_EQ(csv_a, Slurp(b.artifacts.at("trajectory")));

  cfg.seed = 2;
  cfg.output_dir = (dir / "c").string();
  const RunLog c = RunScenario(cfg);
  EXPECT_NE(csv_a, Slurp(c.artifacts.at("trajectory")));
  fs::remove_all(dir);
}

TEST(RunScenarioTest, ArtifactsWritten) {
  ScenarioConfig cfg = ParseScenarioConfig(
      "tasks: [actuator, pcm, slam]\nduration: 0.5\n"
      "script: [{duration: 0.5, v: 0.3, delta: 0.0}]\n");
  const fs::path dir = ScratchDir("artifacts");
  cfg.output_dir = dir.string();
  const RunLog log = RunScenario(cfg);
  for (const char* kind : {"trajectory", "run_log", "map_image", "map_metadata", "scans"}) {
    ASSERT_TRUE(log.artifacts.count(kind)) << kind;
    EXPECT_TRUE(fs::exists(log.artifacts.at(kind))) << kind;
  }
  EXPECT_TRUE(log.map.has_value());
  std::ifstream in(log.artifacts.at("trajectory"));
  const auto rows = ReadTrajectoryCsv(in);
  ASSERT_EQ(rows.size(), log.trajectory.size());
  EXPECT_EQ(rows.back().truth.x, log.trajectory.back().truth.x);
  fs::remove_all(dir);
}

TEST(ExportTest, EmptyRunGivesHeaderOnly) {
  std::ostringstream out;
  ExportCycles(out, {});
  EXPECT_EQ(out.str(), "t,v_cmd,v_actual,delta_cmd,delta_actual,V_m,phi_s\n");
}

TEST(ExportTest, MissingTrace) {
  const fs::path dir = ScratchDir("missing");
  try {
    ExportCyclesFromRun(dir.string(), (dir / "cycles.csv").string());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingTrace);
  }
  std::ofstream(dir / "trajectory.csv") << "t,x\n0,0\n";
  EXPECT_THROW(ExportCyclesFromRun(dir.string(), (dir / "cycles.csv").string()), Error);
  fs::remove_all(dir);
}

TEST(ExportTest, MalformedTrajectory) {
  std::ostringstream header;
  WriteTrajectoryCsv(header, {});
  std::istringstream in(header.str() + "1,2,3\n");
  try {
    ReadTrajectoryCsv(in);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLog);
  }
}

TEST(ExportTest, CyclesFromRunMatchTrajectory) {
  ScenarioConfig cfg =
      LoadScenarioConfig(std::string(SCALETWIN_CONFIG_DIR) + "/steer_sweep.yaml");
  const fs::path dir = ScratchDir("export");
  cfg.output_dir = dir.string();
  const RunLog log = RunScenario(cfg);
  const std::string out = (dir / "cycles.csv").string();
  ExportCyclesFromRun(dir.string(), out);
  std::ifstream in(out);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, log.trajectory.size() + 1);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace scaletwin::harness
