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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string output;  // stdout and stderr
};

Outcome RunCli(const std::string& args) {
  const std::string cmd = std::string(SCALETWIN_CLI_PATH) + " " + args + " 2>&1";
  Outcome out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.output.append(buf.data(), n);
  const int status = pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string Config(const char* name) {
  return std::string(SCALETWIN_CONFIG_DIR) + "/" + name + ".yaml";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("scaletwin_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, RunThenExport) {
  const Outcome run =
      RunCli("run -c " + Config("steer_sweep") + " -o " + (dir_ / "run").string());
  ASSERT_EQ(run.code, 0) << run.output;
  EXPECT_TRUE(fs::exists(dir_ / "run" / "trajectory.csv"));
  const Outcome exported = RunCli("export -r " + (dir_ / "run").string());
  ASSERT_EQ(exported.code, 0) << exported.output;
  std::ifstream in(dir_ / "run" / "cycles.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,v_cmd,v_actual,delta_cmd,delta_actual,V_m,phi_s");
}

TEST_F(CliTest, SeedOverrideChangesNoisyRun) {
  const std::string cfg = (dir_ / "noisy.yaml").string();
  std::ofstream(cfg) << "tasks: [actuator]\nduration: 0.5\n"
                        "odometry_noise: {sigma_v: 0.1, sigma_omega: 0.1}\n"
                        "script: [{duration: 0.5, v: 1.0, delta: 0.0}]\n";
  ASSERT_EQ(RunCli("run -c " + cfg + " -s 3 -o " + (dir_ / "a").string()).code, 0);
  ASSERT_EQ(RunCli("run -c " + cfg + " -s 4 -o " + (dir_ / "b").string()).code, 0);
  std::ifstream a(dir_ / "a" / "trajectory.csv"), b(dir_ / "b" / "trajectory.csv");
  const std::string sa((std::istreambuf_iterator<char>(a)), {});
  const std::string sb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_NE(sa, sb);
}

TEST_F(CliTest, RecordThenReplay) {
  const std::string log = (dir_ / "rec.log").string();
  const std::string cfg = (dir_ / "short.yaml").string();
  std::ofstream(cfg) << "tasks: [actuator, pcm, slam]\nduration: 0.5\n"
                        "script: [{duration: 0.5, v: 0.3, delta: 0.0}]\n";
  const Outcome rec = RunCli("record -c " + cfg + " -o " + dir_.string() + " -l " + log);
  ASSERT_EQ(rec.code, 0) << rec.output;
  const Outcome rep = RunCli("replay -l " + log + " --speed 0 -c " + cfg + " -o " +
                             (dir_ / "replay").string());
  ASSERT_EQ(rep.code, 0) << rep.output;
  EXPECT_NE(rep.output.find("replayed"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "replay" / "replay_map.pgm"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("fly").code, 2);
  EXPECT_EQ(RunCli("run").code, 2);
  EXPECT_EQ(RunCli("replay -l x --speed -1").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST_F(CliTest, CategorizedErrors) {
  const Outcome missing = RunCli("run -c " + (dir_ / "absent.yaml").string());
  EXPECT_EQ(missing.code, 4);
  EXPECT_NE(missing.output.find("error [io]:"), std::string::npos) << missing.output;

  const std::string bad = (dir_ / "bad.yaml").string();
  std::ofstream(bad) << "tasks: [teleport]\n";
  const Outcome invalid = RunCli("run -c " + bad);
  EXPECT_EQ(invalid.code, 3);
  EXPECT_NE(invalid.output.find("error [config]:"), std::string::npos) << invalid.output;

  const std::string junk = (dir_ / "junk.log").string();
  std::ofstream(junk) << "xy";
  const Outcome malformed = RunCli("replay -l " + junk);
  EXPECT_EQ(malformed.code, 5);
  EXPECT_NE(malformed.output.find("error [data]:"), std::string::npos) << malformed.output;

  const Outcome no_trace = RunCli("export -r " + dir_.string());
  EXPECT_EQ(no_trace.code, 5);
}

}  // namespace
