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
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "scaletwin/slam/slam_pipeline.h"
#include "scaletwin/world/lidar.h"
#include "scaletwin/world/world_model.h"

namespace scaletwin::slam {
namespace {

TEST(SlamPipelineTest, FirstScanInitializesMap) {
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  SlamPipeline slam(SlamConfig{}, {});
  const auto r = slam.Correct(SimulateScan(room, {}, world::LidarSpec::G2(10.0, 0.0), 1));
  EXPECT_EQ(r.status, SlamStatus::kInitialized);
  EXPECT_EQ(slam.scans_integrated(), 1);
  EXPECT_STREQ(SlamStatusName(r.status), "initialized");
}

TEST(SlamPipelineTest, StationaryVehicleDoesNotDrift) {
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  const world::LidarSpec spec = world::LidarSpec::G2(10.0, 0.0);
  const Pose2D start{0.2, -0.3, 0.4};
  SlamPipeline slam(SlamConfig{}, start);
  const world::LaserScan scan = SimulateScan(room, start, spec, 1);
  for (int i = 0; i < 100; ++i) {
    const auto r = slam.Step(scan, {0.0, 0.0}, 0.1);
    if (i > 0) {
      EXPECT_EQ(r.status, SlamStatus::kTracking) << i << " " << r.detail;
    }
  }
  EXPECT_LT(std::hypot(slam.pose().x - start.x, slam.pose().y - start.y), 1e-3);
  EXPECT_LT(std::abs(NormalizeAngle(slam.pose().theta - start.theta)), 1e-3);
}

TEST(SlamPipelineTest, OdometryOnlyEqualsDeadReckoning) {
  SlamPipeline slam(SlamConfig{}, {0.5, 0.5, 0.1});
  Pose2D dead_reckoning{0.5, 0.5, 0.1};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Twist2D odom{u(rng), u(rng)};
    const auto r = slam.Step(std::nullopt, odom, 0.01);
    EXPECT_EQ(r.status, SlamStatus::kOdometryOnly);
    dead_reckoning = MotionModel(dead_reckoning, odom, 0.01);
  }
  EXPECT_EQ(slam.pose(), dead_reckoning);
  EXPECT_EQ(slam.scans_integrated(), 0);
}

TEST(SlamPipelineTest, FailedMatchLeavesMapUntouched) {
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  SlamPipeline slam(SlamConfig{}, {});
  slam.Correct(SimulateScan(room, {}, world::LidarSpec::G2(10.0, 0.0), 1));
  const MultiResGrid before = slam.map();
  world::LaserScan sparse;
  sparse.angle_increment = kTwoPi / 16;
  sparse.ranges.assign(16, std::nullopt);
  sparse.ranges[0] = sparse.ranges[4] = sparse.ranges[8] = 2.0;
  const auto r = slam.Step(sparse, {0.0, 0.0}, 0.1);
  EXPECT_EQ(r.status, SlamStatus::kTrackingDegraded);
  EXPECT_FALSE(r.detail.empty());
  for (int k = 0; k < before.num_levels(); ++k) {
    EXPECT_EQ(slam.map().level(k), before.level(k));
  }
  EXPECT_EQ(slam.scans_integrated(), 1);
}

TEST(SlamPipelineTest, MovingThroughRoomTracksTruth) {
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  const world::LidarSpec spec = world::LidarSpec::G2(10.0, 0.01);
  SlamPipeline slam(SlamConfig{}, {});
  Pose2D truth{};
  std::mt19937_64 rng(15);
  std::normal_distribution<double> noise(0.0, 0.02);
  const Twist2D twist{0.5, 0.3};
  for (int i = 0; i < 300; ++i) {
    truth = MotionModel(truth, twist, 0.01);
    std::optional<world::LaserScan> scan;
    if (i % 10 == 9) scan = SimulateScan(room, truth, spec, 100 + i);
    const auto r = slam.Step(scan, {twist.v + noise(rng), twist.omega + noise(rng)}, 0.01);
    if (scan) {
      EXPECT_EQ(r.status, i == 9 ? SlamStatus::kInitialized : SlamStatus::kTracking)
          << i << " " << r.detail;
    }
  }
  EXPECT_LT(std::hypot(slam.pose().x - truth.x, slam.pose().y - truth.y), 0.03);
  EXPECT_LT(std::abs(NormalizeAngle(slam.pose().theta - truth.theta)), 0.02);
}

TEST(MatchCovarianceTest, SymmetricPositiveDefinite) {
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  SlamPipeline slam(SlamConfig{}, {});
  slam.Correct(SimulateScan(room, {}, world::LidarSpec::G2(10.0, 0.0), 1));
  const auto r = slam.Step(SimulateScan(room, {}, world::LidarSpec::G2(10.0, 0.01), 2),
                           {0.0, 0.0}, 0.1);
  ASSERT_TRUE(r.match.has_value());
  const Eigen::Matrix3d cov = MatchCovariance(*r.match, Eigen::Vector3d(1e-6, 1e-6, 1e-6));
  EXPECT_LT((cov - cov.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  EXPECT_GE(eig.eigenvalues().minCoeff(), 1e-6 - 1e-12);
}

}  // namespace
}  // namespace scaletwin::slam
