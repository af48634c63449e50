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

#include "scaletwin/planner/apf.h"

#include "scaletwin/error.h"

namespace scaletwin::planner {

void ApfParams::Validate() const {
  if (!(k_att > 0.0 && k_rep > 0.0 && d0 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "APF gains and d0 must be > 0");
  }
}

double SurfaceDistance(Vec2 p, const Obstacle& obstacle) {
  return (p - obstacle.center).Norm() - obstacle.radius;
}

double ApfPotential(Vec2 p, Vec2 goal, std::span<const Obstacle> obstacles,
                    const ApfParams& params) {
  const Vec2 to_goal = p - goal;
  double u = 0.5 * params.k_att * to_goal.Dot(to_goal);
  for (const Obstacle& o : obstacles) {
    const double d = SurfaceDistance(p, o);
    if (d <= 0.0) throw Error(ErrorCode::kInsideObstacle, "point inside obstacle");
    if (d < params.d0) {
      const double diff = 1.0 / d - 1.0 / params.d0;
      u += 0.5 * params.k_rep * diff * diff;
    }
  }
  return u;
}

Vec2 ApfGradient(Vec2 p, Vec2 goal, std::span<const Obstacle> obstacles,
                 const ApfParams& params) {
  Vec2 grad = params.k_att * (p - goal);
  for (const Obstacle& o : obstacles) {
    const Vec2 offset = p - o.center;
    const double dist = offset.Norm();
    const double d = dist - o.radius;
    if (d <= 0.0) throw Error(ErrorCode::kInsideObstacle, "point inside obstacle");
    if (d < params.d0) {
      // dU/dd = -k_rep (1/d - 1/d0) / d^2, and dd/dp is the unit offset.
      const double dudd = -params.k_rep * (1.0 / d - 1.0 / params.d0) / (d * d);
      grad = grad + (dudd / dist) * offset;
    }
  }
  return grad;
}

}  // namespace scaletwin::planner
