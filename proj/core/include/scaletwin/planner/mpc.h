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

#ifndef SCALETWIN_PLANNER_MPC_H_
#define SCALETWIN_PLANNER_MPC_H_

#include <span>
#include <vector>

#include "scaletwin/ackermann.h"
#include "scaletwin/geometry.h"
#include "scaletwin/planner/apf.h"
#include "scaletwin/vehicle/actuators.h"
#include "scaletwin/vehicle/dynamics.h"

namespace scaletwin::planner {

struct MpcConfig {
  int horizon = 20;
  double dt = 0.05;
  std::vector<double> speed_candidates;
  std::vector<double> steer_candidates;
  double control_weight = 0.1;  // w_u
  double v_ref = 1.0;
  // Reference speed is min(v_ref, approach_gain * distance to goal), so the
  // cheapest speed falls to zero on arrival.
  double approach_gain = 1.0;
  // Within this distance of the goal the planner commands a stop.
  double goal_tolerance = 0.05;

  // Throws Error(kInvalidArgument).
  void Validate(const ChassisParams& params) const;
};

// Horizon 20 x 0.05 s, 7 steering angles spread over the chassis range and
// 3 forward speeds up to v_ref.
MpcConfig DefaultMpcConfig(const ChassisParams& params);

enum class PlanStatus { kOk, kGoalReached, kAllCandidatesInfeasible };

const char* PlanStatusName(PlanStatus status);

struct PlanResult {
  vehicle::AckermannCommand command;
  PlanStatus status = PlanStatus::kOk;
  double cost = 0.0;
  std::size_t feasible_candidates = 0;
};

// Cost of holding (v, delta) over the horizon from `state`: the sum over the
// rolled-out steps of U(p_k) + w_u (delta^2 + (v - v_ref)^2). Infinity when
// any step enters an obstacle.
double RolloutCost(const vehicle::VehicleState& state, double v, double delta,
                   Vec2 goal, std::span<const Obstacle> obstacles,
                   const MpcConfig& config, const ApfParams& apf,
                   const ChassisParams& params);

// Poses visited by holding (v, delta) for the horizon, excluding the start.
std::vector<Pose2D> Rollout(const vehicle::VehicleState& state, double v,
                            double delta, const MpcConfig& config,
                            const ChassisParams& params);

double ReferenceSpeed(const Pose2D& pose, Vec2 goal, const MpcConfig& config);

// Evaluates every (speed, steer) candidate and returns the cheapest. Costs
// within a relative 1e-12 of the minimum tie and are resolved by smallest
// |delta|, then smallest |v - v_ref|, then smaller v, then smaller delta, so
// the answer does not depend on evaluation order. When every rollout
// collides, returns a stop command flagged kAllCandidatesInfeasible. Throws
// Error(kInsideObstacle) when the start pose is already inside an obstacle.
PlanResult PlanStep(const vehicle::VehicleState& state, Vec2 goal,
                    std::span<const Obstacle> obstacles, const MpcConfig& config,
                    const ApfParams& apf, const ChassisParams& params);

}  // namespace scaletwin::planner

#endif  // SCALETWIN_PLANNER_MPC_H_
