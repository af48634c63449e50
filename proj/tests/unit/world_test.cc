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
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles/raycast_oracle.h"
#include "scaletwin/error.h"
#include "scaletwin/world/lidar.h"
#include "scaletwin/world/scan_log.h"
#include "scaletwin/world/world_model.h"
#include "support/random_scenes.h"

namespace scaletwin::world {
namespace {

namespace fs = std::filesystem;

constexpr double kDegPerRad = 180.0 / kPi;

TEST(BeamsPerScanTest, PublishedResolutionEndpoints) {
  EXPECT_EQ(BeamsPerScan(LidarSpec::G2(5.0)), 1000);
  EXPECT_NEAR(AngleIncrement(LidarSpec::G2(5.0)) * kDegPerRad, 0.36, 1e-12);
  EXPECT_EQ(BeamsPerScan(LidarSpec::G2(12.0)), 417);
  EXPECT_NEAR(AngleIncrement(LidarSpec::G2(12.0)) * kDegPerRad, 0.864, 0.001);
  EXPECT_EQ(BeamsPerScan(LidarSpec::G2(10.0)), 500);
  EXPECT_NEAR(AngleIncrement(LidarSpec::G2(10.0)) * kDegPerRad, 0.72, 1e-12);
}

TEST(BeamsPerScanTest, FullCircleCoverage) {
  for (double f = 5.0; f <= 12.0; f += 0.25) {
    const LidarSpec spec = LidarSpec::G2(f);
    EXPECT_NEAR(AngleIncrement(spec) * BeamsPerScan(spec), kTwoPi, 1e-12) << f;
  }
}

TEST(LidarSpecTest, Validation) {
  EXPECT_THROW(LidarSpec::G2(4.0), Error);
  EXPECT_THROW(LidarSpec::G2(13.0), Error);
  LidarSpec spec;
  spec.min_range = 0.0;
  EXPECT_THROW(spec.Validate(), Error);
  spec = LidarSpec{};
  spec.range_rate = 70.0;  // 7 beams at 10 Hz
  EXPECT_THROW(spec.Validate(), Error);
  spec = LidarSpec{};
  spec.noise_sigma = -0.1;
  EXPECT_THROW(spec.Validate(), Error);
}

TEST(RaycastTest, SquareRoomExamples) {
  const WorldModel room = MakeSquareRoom(4.0);
  EXPECT_NEAR(*Raycast(room, {0.0, 0.0}, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(*Raycast(room, {0.0, 0.0}, kPi / 4), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(*Raycast(room, {0.0, 0.0}, kPi / 4), 2.8284, 1e-4);
  EXPECT_NEAR(*Raycast(room, {1.0, 0.5}, kPi), 3.0, 1e-15);
}

TEST(RaycastTest, EmptyWorldHasNoHit) {
  const WorldModel empty({}, {{-1.0, -1.0}, {1.0, 1.0}});
  EXPECT_FALSE(Raycast(empty, {0.0, 0.0}, 0.3).has_value());
}

TEST(RaycastTest, RayPointingAwayMisses) {
  const WorldModel wall({{{1.0, -1.0}, {1.0, 1.0}}}, {{-5.0, -5.0}, {5.0, 5.0}});
  EXPECT_TRUE(Raycast(wall, {0.0, 0.0}, 0.0).has_value());
  EXPECT_FALSE(Raycast(wall, {0.0, 0.0}, kPi).has_value());
  EXPECT_FALSE(Raycast(wall, {0.0, 0.0}, kPi / 2).has_value());
}

TEST(RaycastTest, AgreesWithHighPrecisionOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k = 0; k < 100; ++k) {
    const auto scene = testing::RandomScene(rng);
    const auto segments = testing::OracleSegments(scene.world);
    for (int i = 0; i < 100; ++i) {
      const double a = angle(rng);
      const auto got = Raycast(scene.world, scene.pose.Translation(), a);
      const auto ref = oracles::CastRay(scene.pose.x, scene.pose.y, a, segments);
      ASSERT_EQ(got.has_value(), ref.has_value());
      if (got) {
        EXPECT_LT(oracles::RelativeError(*got, ref->distance), 1e-12);
      }
    }
  }
}

TEST(DistanceTest, SegmentDistance) {
  const Segment s{{0.0, 0.0}, {2.0, 0.0}};
  EXPECT_DOUBLE_EQ(DistanceToSegment({1.0, 1.0}, s), 1.0);
  EXPECT_DOUBLE_EQ(DistanceToSegment({3.0, 0.0}, s), 1.0);
  EXPECT_DOUBLE_EQ(DistanceToSegment({-3.0, 4.0}, s), 5.0);
  EXPECT_DOUBLE_EQ(DistanceToNearestWall(MakeSquareRoom(4.0), {1.5, 0.0}), 0.5);
}

TEST(SimulateScanTest, TooCloseWallIsNoReturn) {
  const WorldModel near_wall({{{0.05, -1.0}, {0.05, 1.0}}}, {{-2.0, -2.0}, {2.0, 2.0}});
  LidarSpec spec = LidarSpec::G2(10.0, 0.0);
  const LaserScan scan = SimulateScan(near_wall, {}, spec, 1);
  EXPECT_FALSE(scan.ranges[0].has_value());
}

TEST(SimulateScanTest, TooFarWallIsNoReturn) {
  const WorldModel far_wall({{{13.0, -1.0}, {13.0, 1.0}}}, {{-20.0, -20.0}, {20.0, 20.0}});
  const LaserScan scan = SimulateScan(far_wall, {}, LidarSpec::G2(10.0, 0.0), 1);
  EXPECT_FALSE(scan.ranges[0].has_value());
  EXPECT_EQ(scan.FiniteCount(), 0u);
}

TEST(SimulateScanTest, NoiseFreeScanEqualsPerBeamRaycast) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto scene = testing::RandomScene(rng);
    const LidarSpec spec = LidarSpec::G2(5.0 + 7.0 * (k % 8) / 7.0, 0.0);
    const LaserScan scan = SimulateScan(scene.world, scene.pose, spec, 99);
    ASSERT_EQ(scan.ranges.size(), static_cast<std::size_t>(BeamsPerScan(spec)));
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
      std::optional<double> expected = Raycast(
          scene.world, scene.pose.Translation(), scene.pose.theta + scan.BeamAngle(i));
      if (expected && (*expected < spec.min_range || *expected > spec.max_range)) {
        expected.reset();
      }
      ASSERT_EQ(scan.ranges[i], expected) << "scene " << k << " beam " << i;
    }
  }
}

TEST(SimulateScanTest, SquareRoomFromCenterMatchesClosedForm) {
  // The nearest wall of the 4 m room is 2 m away along the beam's dominant
  // axis, so r = 2 / max(|cos a|, |sin a|).
  const LaserScan scan = SimulateScan(MakeSquareRoom(4.0), {}, LidarSpec::G2(10.0, 0.0), 1);
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double a = scan.BeamAngle(i);
    const double expected = 2.0 / std::max(std::abs(std::cos(a)), std::abs(std::sin(a)));
    ASSERT_TRUE(scan.ranges[i].has_value());
    EXPECT_NEAR(*scan.ranges[i], expected, 1e-12 * expected);
  }
}

TEST(SimulateScanTest, FiniteRangesStayInSpec) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto scene = testing::RandomScene(rng);
    const LidarSpec spec = LidarSpec::G2(10.0, 0.05);
    const LaserScan scan = SimulateScan(scene.world, scene.pose, spec, rng());
    for (const auto& r : scan.ranges) {
      if (!r) continue;
      EXPECT_GE(*r, spec.min_range);
      EXPECT_LE(*r, spec.max_range);
    }
  }
}

TEST(SimulateScanTest, SameSeedSameScan) {
  const WorldModel office = MakeOfficeWorld();
  const Pose2D pose{0.0, 0.0, 0.3};
  const LidarSpec spec = LidarSpec::G2(10.0, 0.01);
  EXPECT_EQ(SimulateScan(office, pose, spec, 42, 7), SimulateScan(office, pose, spec, 42, 7));
  EXPECT_NE(SimulateScan(office, pose, spec, 42), SimulateScan(office, pose, spec, 43));
}

TEST(SimulateScanTest, BeamZeroAlongHeadingAndHintSet) {
  const Pose2D pose{0.0, 0.0, kPi / 2};
  const LaserScan scan = SimulateScan(MakeSquareRoom(4.0), pose, LidarSpec::G2(10.0, 0.0), 1, 5);
  EXPECT_EQ(scan.angle_start, 0.0);
  EXPECT_EQ(scan.pose_hint, pose);
  EXPECT_EQ(scan.stamp_ns, 5u);
  EXPECT_NEAR(*scan.ranges[0], 2.0, 1e-12);
}

TEST(SimulateScanTest, PoseOutOfBounds) {
  try {
    SimulateScan(MakeSquareRoom(4.0), {3.0, 0.0, 0.0}, LidarSpec::G2(), 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPoseOutOfBounds);
  }
}

TEST(BuiltinWorldTest, KnownNames) {
  for (const char* name : {"square4", "open10", "office"}) {
    EXPECT_TRUE(IsBuiltinWorld(name));
    EXPECT_FALSE(BuiltinWorld(name).segments().empty());
  }
  EXPECT_FALSE(IsBuiltinWorld("warehouse"));
  EXPECT_THROW(BuiltinWorld("warehouse"), Error);
  EXPECT_EQ(BuiltinWorld("open10").bounds().max.x, 5.0);
}

TEST(WorldFileTest, RoundTrip) {
  const fs::path path = fs::temp_directory_path() / "scaletwin_world_test.yaml";
  const WorldModel office = MakeOfficeWorld();
  SaveWorldFile(office, path.string());
  const WorldModel loaded = LoadWorldFile(path.string());
  ASSERT_EQ(loaded.segments().size(), office.segments().size());
  for (std::size_t i = 0; i < office.segments().size(); ++i) {
    EXPECT_EQ(loaded.segments()[i].a, office.segments()[i].a);
    EXPECT_EQ(loaded.segments()[i].b, office.segments()[i].b);
  }
  EXPECT_EQ(loaded.bounds().min, office.bounds().min);
  fs::remove(path);
}

TEST(WorldFileTest, LoadFailures) {
  const fs::path path = fs::temp_directory_path() / "scaletwin_bad_world.yaml";
  auto expect_failure = [&](const std::string& text) {
    std::ofstream(path) << text;
    try {
      LoadWorldFile(path.string());
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kWorldLoadFailure);
    }
  };
  expect_failure("bounds: [0, 0, 1]\nsegments: []\n");
  expect_failure("bounds: [0, 0, 1, 1]\nsegments: [[0, 0, 1]]\n");
  expect_failure("bounds: [0, 0, 1, 1]\nsegments: [[0, 0, x, 1]]\n");
  expect_failure("{{{");
  fs::remove(path);
  EXPECT_THROW(LoadWorldFile("/nonexistent/world.yaml"), Error);
}

TEST(ScanLogTest, JsonLinesRoundTrip) {
  const LaserScan scan =
      SimulateScan(MakeOfficeWorld(), {0.1, 0.2, 0.3}, LidarSpec::G2(10.0, 0.01), 3, 123);
  LaserScan no_hint = scan;
  no_hint.pose_hint.reset();
  std::stringstream buffer;
  WriteScanLog(buffer, {scan, no_hint});
  const auto back = ReadScanLog(buffer);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], scan);
  EXPECT_EQ(back[1], no_hint);
}

TEST(ScanLogTest, NoReturnIsNull) {
  LaserScan scan;
  scan.angle_increment = 0.5;
  scan.ranges = {1.5, std::nullopt};
  const std::string line = ScanToJsonLine(scan);
  EXPECT_NE(line.find("null]"), std::string::npos) << line;
}

TEST(ScanLogTest, MalformedLine) {
  EXPECT_THROW(ScanFromJsonLine("{\"stamp\": 1}"), Error);
  EXPECT_THROW(ScanFromJsonLine("not json"), Error);
}

}  // namespace
}  // namespace scaletwin::world
