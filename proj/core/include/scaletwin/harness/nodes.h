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

#ifndef SCALETWIN_HARNESS_NODES_H_
#define SCALETWIN_HARNESS_NODES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "scaletwin/harness/payloads.h"
#include "scaletwin/harness/scenario_config.h"
#include "scaletwin/planner/mpc.h"
#include "scaletwin/slam/slam_pipeline.h"
#include "scaletwin/vehicle/dynamics.h"

namespace scaletwin::harness {

// Simulated car: speed controller and servo with rate limits, kinematic
// bicycle, and controller odometry.
class VehicleNode {
 public:
  VehicleNode(const ScenarioConfig& cfg, std::uint64_t seed);

  // Clamped to the chassis limits.
  void SetCommand(const vehicle::AckermannCommand& command);
  // Advances one step and returns the odometry for it. The pose field is
  // the dead-reckoned integral of the reported twists.
  OdometryMessage Step(double dt);

  const vehicle::VehicleState& state() const { return state_; }
  const vehicle::AckermannCommand& command() const { return command_; }
  // Motor and servo signals matching the actual speed and steering.
  vehicle::MotorCommand actuators() const;
  const Pose2D& dead_reckoning() const { return dead_reckoning_; }

 private:
  ChassisParams chassis_;
  vehicle::ActuatorCalibration calibration_;
  vehicle::OdometryNoise noise_;
  std::mt19937_64 rng_;
  vehicle::VehicleState state_;
  vehicle::AckermannCommand command_;
  Pose2D dead_reckoning_;
};

// Message-driven SLAM stage: every odometry message advances the EKF by the
// time since the previous one, every scan runs a correction. Feeding the
// same message sequence reproduces the same map bit for bit.
class SlamNode {
 public:
  SlamNode(const slam::SlamConfig& config, const Pose2D& start,
           std::uint64_t start_stamp_ns = 0);

  void HandleOdometry(const OdometryMessage& odom, std::uint64_t stamp_ns);
  slam::SlamStepResult HandleScan(const world::LaserScan& scan);

  const slam::SlamPipeline& pipeline() const { return pipeline_; }
  Pose2D pose() const { return pipeline_.pose(); }
  const std::map<std::string, int>& status_counts() const { return status_counts_; }

 private:
  slam::SlamPipeline pipeline_;
  std::uint64_t last_odom_ns_;
  std::map<std::string, int> status_counts_;
};

// Replans from the latest pose and the obstacles of the latest scan.
class PlannerNode {
 public:
  explicit PlannerNode(const ScenarioConfig& cfg);

  void HandlePose(const Pose2D& pose) { pose_ = pose; }
  // Obstacles are placed using the most recent pose.
  void HandleScan(const world::LaserScan& scan);
  planner::PlanResult Plan(double v, double delta);

  const std::vector<planner::Obstacle>& obstacles() const { return obstacles_; }
  const std::map<std::string, int>& status_counts() const { return status_counts_; }

 private:
  Vec2 goal_;
  planner::MpcConfig mpc_;
  planner::ApfParams apf_;
  planner::ObstacleExtractionConfig extraction_;
  ChassisParams chassis_;
  Pose2D pose_;
  std::vector<planner::Obstacle> obstacles_;
  std::map<std::string, int> status_counts_;
};

// Command of a script at time t; zero after the script ends. Segment
// boundaries are rounded to whole steps of `dt`.
vehicle::AckermannCommand ScriptCommand(const std::vector<ScriptSegment>& script,
                                        std::int64_t tick, double dt);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_NODES_H_
