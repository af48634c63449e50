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

#include "scaletwin/harness/nodes.h"

#include <cmath>

#include "scaletwin/error.h"
#include "scaletwin/planner/obstacles.h"
#include "scaletwin/vehicle/odometry.h"

namespace scaletwin::harness {

VehicleNode::VehicleNode(const ScenarioConfig& cfg, std::uint64_t seed)
    : chassis_(cfg.chassis),
      calibration_(cfg.calibration),
      noise_(cfg.odometry_noise),
      rng_(seed),
      dead_reckoning_(cfg.start) {
  state_.pose = cfg.start;
}

void VehicleNode::SetCommand(const vehicle::AckermannCommand& command) {
  command_ = vehicle::AckermannCommand::Clamped(command.v, command.delta, chassis_);
}

vehicle::MotorCommand VehicleNode::actuators() const {
  return vehicle::CommandToActuators({state_.v, state_.delta}, calibration_);
}

OdometryMessage VehicleNode::Step(double dt) {
  state_ = vehicle::ApplyRateLimits(state_, command_, dt, chassis_);
  // The controller reports from the signals it drives during this step.
  const vehicle::MotorCommand motor = actuators();
  const bool noisy = noise_.sigma_v > 0.0 || noise_.sigma_omega > 0.0;
  OdometryMessage odom;
  odom.twist = vehicle::OdometryFromActuators(std::span(&motor, 1), calibration_,
                                              chassis_, noise_, noisy ? &rng_ : nullptr);
  state_ = vehicle::StepKinematics(state_, dt, chassis_);

  dead_reckoning_.x += odom.twist.v * std::cos(dead_reckoning_.theta) * dt;
  dead_reckoning_.y += odom.twist.v * std::sin(dead_reckoning_.theta) * dt;
  dead_reckoning_.theta = NormalizeAngle(dead_reckoning_.theta + odom.twist.omega * dt);
  odom.pose = dead_reckoning_;
  return odom;
}

SlamNode::SlamNode(const slam::SlamConfig& config, const Pose2D& start,
                   std::uint64_t start_stamp_ns)
    : pipeline_(config, start), last_odom_ns_(start_stamp_ns) {}

void SlamNode::HandleOdometry(const OdometryMessage& odom, std::uint64_t stamp_ns) {
  if (stamp_ns <= last_odom_ns_) return;
  const double dt = static_cast<double>(stamp_ns - last_odom_ns_) * 1e-9;
  last_odom_ns_ = stamp_ns;
  pipeline_.Predict(odom.twist, dt);
}

slam::SlamStepResult SlamNode::HandleScan(const world::LaserScan& scan) {
  slam::SlamStepResult result = pipeline_.Correct(scan);
  ++status_counts_[slam::SlamStatusName(result.status)];
  return result;
}

PlannerNode::PlannerNode(const ScenarioConfig& cfg)
    : goal_(cfg.goal.value_or(Vec2{})),
      mpc_(cfg.mpc),
      apf_(cfg.apf),
      extraction_(cfg.obstacles),
      chassis_(cfg.chassis),
      pose_(cfg.start) {}

void PlannerNode::HandleScan(const world::LaserScan& scan) {
  obstacles_ = planner::ExtractObstacles(scan, pose_, extraction_);
}

planner::PlanResult PlannerNode::Plan(double v, double delta) {
  vehicle::VehicleState state;
  state.pose = pose_;
  state.v = v;
  state.delta = delta;
  planner::PlanResult result;
  try {
    result = planner::PlanStep(state, goal_, obstacles_, mpc_, apf_, chassis_);
    ++status_counts_[planner::PlanStatusName(result.status)];
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsideObstacle) throw;
    // A noisy return can put an extracted circle over the vehicle; stop
    // rather than abort the run.
    result.status = planner::PlanStatus::kAllCandidatesInfeasible;
    result.cost = std::numeric_limits<double>::infinity();
    ++status_counts_["inside-obstacle"];
  }
  return result;
}

vehicle::AckermannCommand ScriptCommand(const std::vector<ScriptSegment>& script,
                                        std::int64_t tick, double dt) {
  double end = 0.0;
  for (const auto& segment : script) {
    end += segment.duration;
    if (tick < std::llround(end / dt)) return {segment.v, segment.delta};
  }
  return {};
}

}  // namespace scaletwin::harness
