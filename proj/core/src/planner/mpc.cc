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

#include "scaletwin/planner/mpc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "scaletwin/error.h"

namespace scaletwin::planner {
namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

void MpcConfig::Validate(const ChassisParams& params) const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(horizon >= 1, "horizon must be >= 1");
  require(dt > 0.0, "dt must be > 0");
  require(!speed_candidates.empty() && !steer_candidates.empty(),
          "candidate sets must be non-empty");
  for (double v : speed_candidates) {
    require(v >= params.min_speed && v <= params.max_speed,
            "speed candidate outside chassis limits");
  }
  for (double d : steer_candidates) {
    require(std::abs(d) <= params.max_steer, "steer candidate outside chassis limits");
  }
  require(control_weight >= 0.0, "control_weight must be >= 0");
  require(approach_gain > 0.0, "approach_gain must be > 0");
  require(goal_tolerance >= 0.0, "goal_tolerance must be >= 0");
}

MpcConfig DefaultMpcConfig(const ChassisParams& params) {
  MpcConfig config;
  for (int i = -3; i <= 3; ++i) {
    config.steer_candidates.push_back(params.max_steer * (i / 3.0));
  }
  config.speed_candidates = {0.25 * config.v_ref, 0.5 * config.v_ref, config.v_ref};
  return config;
}

const char* PlanStatusName(PlanStatus status) {
  switch (status) {
    case PlanStatus::kOk: return "ok";
    case PlanStatus::kGoalReached: return "goal-reached";
    case PlanStatus::kAllCandidatesInfeasible: return "all-candidates-infeasible";
  }
  return "unknown";
}

std::vector<Pose2D> Rollout(const vehicle::VehicleState& state, double v,
                            double delta, const MpcConfig& config,
                            const ChassisParams& params) {
  std::vector<Pose2D> poses;
  poses.reserve(static_cast<std::size_t>(config.horizon));
  vehicle::VehicleState s = state;
  s.v = v;
  s.delta = delta;
  for (int k = 0; k < config.horizon; ++k) {
    s = vehicle::StepKinematics(s, config.dt, params);
    poses.push_back(s.pose);
  }
  return poses;
}

double ReferenceSpeed(const Pose2D& pose, Vec2 goal, const MpcConfig& config) {
  return std::min(config.v_ref,
                  config.approach_gain * (pose.Translation() - goal).Norm());
}

double RolloutCost(const vehicle::VehicleState& state, double v, double delta,
                   Vec2 goal, std::span<const Obstacle> obstacles,
                   const MpcConfig& config, const ApfParams& apf,
                   const ChassisParams& params) {
  const double v_ref = ReferenceSpeed(state.pose, goal, config);
  const double control =
      config.control_weight * (delta * delta + (v - v_ref) * (v - v_ref));
  double cost = 0.0;
  for (const Pose2D& pose : Rollout(state, v, delta, config, params)) {
    const Vec2 p = pose.Translation();
    for (const Obstacle& o : obstacles) {
      if (SurfaceDistance(p, o) <= 0.0) return std::numeric_limits<double>::infinity();
    }
    cost += ApfPotential(p, goal, obstacles, apf) + control;
  }
  return cost;
}

PlanResult PlanStep(const vehicle::VehicleState& state, Vec2 goal,
                    std::span<const Obstacle> obstacles, const MpcConfig& config,
                    const ApfParams& apf, const ChassisParams& params) {
  config.Validate(params);
  apf.Validate();
  for (const Obstacle& o : obstacles) {
    if (SurfaceDistance(state.pose.Translation(), o) <= 0.0) {
      throw Error(ErrorCode::kInsideObstacle, "vehicle starts inside an obstacle");
    }
  }
  PlanResult result;
  if ((state.pose.Translation() - goal).Norm() <= config.goal_tolerance) {
    result.status = PlanStatus::kGoalReached;
    return result;
  }

  struct Candidate {
    double v;
    double delta;
    double cost;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(config.speed_candidates.size() * config.steer_candidates.size());
  for (double v : config.speed_candidates) {
    for (double delta : config.steer_candidates) {
      candidates.push_back(
          {v, delta, RolloutCost(state, v, delta, goal, obstacles, config, apf, params)});
    }
  }
  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    if (std::isfinite(c.cost)) {
      ++result.feasible_candidates;
      best_cost = std::min(best_cost, c.cost);
    }
  }
  if (!std::isfinite(best_cost)) {
    result.status = PlanStatus::kAllCandidatesInfeasible;
    result.cost = best_cost;
    return result;
  }

  const double v_ref = ReferenceSpeed(state.pose, goal, config);
  const double threshold = best_cost + kTieTolerance * std::abs(best_cost);
  auto key = [v_ref](const Candidate& c) {
    return std::make_tuple(std::abs(c.delta), std::abs(c.v - v_ref), c.v, c.delta);
  };
  const Candidate* chosen = nullptr;
  for (const auto& c : candidates) {
    if (!(c.cost <= threshold)) continue;
    if (chosen == nullptr || key(c) < key(*chosen)) chosen = &c;
  }
  result.command = {chosen->v, chosen->delta};
  result.cost = chosen->cost;
  return result;
}

}  // namespace scaletwin::planner
