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

#include <gtest/gtest.h>

#include "oracles/trig_oracle.h"
#include "scaletwin/ackermann.h"
#include "scaletwin/error.h"
#include "scaletwin/geometry.h"

namespace scaletwin {
namespace {

ChassisParams UnitChassis(double wheelbase, double track) {
  ChassisParams p = DefaultChassis();
  p.wheelbase = wheelbase;
  p.track = track;
  return p;
}

TEST(DefaultChassisTest, TableValuesInSi) {
  const ChassisParams p = DefaultChassis();
  EXPECT_DOUBLE_EQ(p.wheelbase, 12.75 * 0.0254);
  EXPECT_NEAR(p.wheelbase, 0.32385, 1e-12);
  EXPECT_NEAR(p.track, 0.29591, 1e-12);
  EXPECT_EQ(p.max_speed, 5.0);
  EXPECT_EQ(p.min_speed, -5.0);
  EXPECT_EQ(p.max_steer, 0.36);
  EXPECT_EQ(p.max_accel, 6.67);
  EXPECT_EQ(p.max_steer_rate, 5.22);
  EXPECT_NO_THROW(p.Validate());
}

TEST(ChassisParamsTest, ValidateRejectsBrokenInvariants) {
  auto expect_invalid = [](ChassisParams p) {
    try {
      p.Validate();
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  };
  ChassisParams p = DefaultChassis();
  p.wheelbase = 0.0;
  expect_invalid(p);
  p = DefaultChassis();
  p.max_steer = kPi / 2;
  expect_invalid(p);
  p = DefaultChassis();
  p.min_speed = p.max_speed;
  expect_invalid(p);
  p = DefaultChassis();
  p.max_steer_rate = -1.0;
  expect_invalid(p);
}

TEST(AckermannTest, UnitGeometry) {
  // Frozen from oracles::WheelAngles(1, 1, 1.5).
  const WheelAngles a = AckermannWheelAngles(UnitChassis(1.0, 1.0), 1.5);
  EXPECT_NEAR(a.inner, 0.78539816339744828, 1e-15);
  EXPECT_NEAR(a.outer, 0.46364760900080609, 1e-15);
}

TEST(AckermannTest, DefaultChassisOneMeterRadius) {
  // Frozen from oracles::WheelAngles with the default wheelbase and track.
  const WheelAngles a = AckermannWheelAngles(DefaultChassis(), 1.0);
  EXPECT_NEAR(a.inner, 0.36322177089559332, 1e-15);
  EXPECT_NEAR(a.outer, 0.27496456645452005, 1e-15);
}

TEST(AckermannTest, StraightLineLimit) {
  const WheelAngles a = AckermannWheelAngles(DefaultChassis(), 1e9);
  EXPECT_NEAR(a.inner, 0.0, 1e-6);
  EXPECT_NEAR(a.outer, 0.0, 1e-6);
}

TEST(AckermannTest, RightTurnMirrorsLeftTurn) {
  const WheelAngles left = AckermannWheelAngles(DefaultChassis(), 2.0);
  const WheelAngles right = AckermannWheelAngles(DefaultChassis(), -2.0);
  EXPECT_EQ(right.inner, -left.inner);
  EXPECT_EQ(right.outer, -left.outer);
}

TEST(AckermannTest, RadiusInsideTrackIsDomainError) {
  const ChassisParams p = DefaultChassis();
  for (double r : {0.0, p.track / 2, -p.track / 2, 0.1, -0.1}) {
    try {
      AckermannWheelAngles(p, r);
      ADD_FAILURE() << "accepted R = " << r;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomainError);
    }
  }
}

TEST(AckermannTest, RandomGeometryMatchesOracleAndOrdersWheels) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> len(0.05, 5.0);
  std::uniform_real_distribution<double> margin(1e-3, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double l = len(rng);
    const double t = len(rng);
    const double r = t / 2 + margin(rng);
    const WheelAngles a = AckermannWheelAngles(UnitChassis(l, t), r);
    const auto ref = oracles::WheelAngles(l, t, r);
    EXPECT_LT(oracles::RelativeError(a.inner, ref.inner), 1e-12);
    EXPECT_LT(oracles::RelativeError(a.outer, ref.outer), 1e-12);
    EXPECT_GT(a.inner, a.outer);
    EXPECT_GT(a.outer, 0.0);
    EXPECT_LT(a.inner, kPi / 2);
  }
}

TEST(AckermannTest, InvertingEachWheelRecoversRadius) {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> len(0.1, 2.0);
  std::uniform_real_distribution<double> margin(0.05, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const double l = len(rng);
    const double t = len(rng);
    const double r = t / 2 + margin(rng);
    const WheelAngles a = AckermannWheelAngles(UnitChassis(l, t), r);
    const double from_inner = l / std::tan(a.inner) + t / 2;
    const double from_outer = l / std::tan(a.outer) - t / 2;
    EXPECT_NEAR(from_inner, r, 1e-9 * r);
    EXPECT_NEAR(from_outer, r, 1e-9 * r);
  }
}

TEST(TurningRadiusTest, Examples) {
  const TurningRadius r = TurningRadiusFromSteer(DefaultChassis(), 0.36);
  ASSERT_FALSE(r.is_straight());
  // Frozen from oracles::BicycleRadius(0.32385, 0.36).
  EXPECT_NEAR(r.meters(), 0.86038136689780798, 1e-14);

  ChassisParams unit = UnitChassis(1.0, 0.5);
  unit.max_steer = 1.0;
  EXPECT_NEAR(TurningRadiusFromSteer(unit, kPi / 4).meters(), 1.0, 1e-15);
  EXPECT_TRUE(TurningRadiusFromSteer(unit, 0.0).is_straight());
}

TEST(TurningRadiusTest, SignFollowsSteering) {
  EXPECT_LT(TurningRadiusFromSteer(DefaultChassis(), -0.2).meters(), 0.0);
  EXPECT_GT(TurningRadiusFromSteer(DefaultChassis(), 0.2).meters(), 0.0);
}

TEST(TurningRadiusTest, SteeringBeyondLimitRejected) {
  EXPECT_THROW(TurningRadiusFromSteer(DefaultChassis(), 0.37), Error);
}

TEST(NormalizeAngleTest, Examples) {
  EXPECT_EQ(NormalizeAngle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(NormalizeAngle(3 * kPi), kPi);
  EXPECT_EQ(NormalizeAngle(-kPi), kPi);
  EXPECT_EQ(NormalizeAngle(kPi), kPi);
}

TEST(NormalizeAngleTest, RangeIdempotenceAndPeriodicity) {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> angle(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = angle(rng);
    const double n = NormalizeAngle(a);
    EXPECT_GT(n, -kPi);
    EXPECT_LE(n, kPi);
    EXPECT_EQ(NormalizeAngle(n), n);
    // Same angle modulo 2 pi.
    EXPECT_NEAR(std::remainder(a - n, kTwoPi), 0.0, 1e-12);
    EXPECT_NEAR(std::remainder(NormalizeAngle(a + kTwoPi) - n, kTwoPi), 0.0, 1e-12);
  }
}

TEST(PoseTest, MakePoseNormalizesAndTransformRotates) {
  const Pose2D p = MakePose(1.0, 2.0, kPi / 2 + kTwoPi);
  EXPECT_NEAR(p.theta, kPi / 2, 1e-12);
  const Vec2 q = p.Transform({1.0, 0.0});
  EXPECT_NEAR(q.x, 1.0, 1e-12);
  EXPECT_NEAR(q.y, 3.0, 1e-12);
}

TEST(ErrorTest, CodeNamesAreStable) {
  EXPECT_EQ(ErrorCodeName(ErrorCode::kBadMagic), "bad-magic");
  EXPECT_EQ(ErrorCodeName(ErrorCode::kDomainError), "domain-error");
  const Error e(ErrorCode::kIoError, "x");
  EXPECT_EQ(e.code(), ErrorCode::kIoError);
}

}  // namespace
}  // namespace scaletwin
