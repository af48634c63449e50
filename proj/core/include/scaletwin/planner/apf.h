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

#ifndef SCALETWIN_PLANNER_APF_H_
#define SCALETWIN_PLANNER_APF_H_

#include <span>

#include "scaletwin/geometry.h"

namespace scaletwin::planner {

struct Obstacle {
  Vec2 center;
  double radius = 0.0;
};

struct ApfParams {
  double k_att = 10.0;  // 1/s^2
  double k_rep = 1.0;   // m^2/s^2
  double d0 = 1.0;      // influence distance, m

  // Throws Error(kInvalidArgument) unless every field is > 0.
  void Validate() const;
};

// Distance from p to the obstacle's surface; <= 0 inside.
double SurfaceDistance(Vec2 p, const Obstacle& obstacle);

// U = 1/2 k_att |p - goal|^2 + sum over obstacles with d < d0 of
// 1/2 k_rep (1/d - 1/d0)^2. Throws Error(kInsideObstacle) when d <= 0 for
// any obstacle.
double ApfPotential(Vec2 p, Vec2 goal, std::span<const Obstacle> obstacles,
                    const ApfParams& params);

// Analytic gradient of ApfPotential; same error contract.
Vec2 ApfGradient(Vec2 p, Vec2 goal, std::span<const Obstacle> obstacles,
                 const ApfParams& params);

}  // namespace scaletwin::planner

#endif  // SCALETWIN_PLANNER_APF_H_
