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

#include <vector>

#include <benchmark/benchmark.h>

#include "scaletwin/planner/mpc.h"

namespace scaletwin::planner {
namespace {

void BM_PlanStep(benchmark::State& state) {
  const ChassisParams chassis = DefaultChassis();
  const MpcConfig config = DefaultMpcConfig(chassis);
  const ApfParams apf;
  std::vector<Obstacle> obstacles;
  for (int i = 0; i < state.range(0); ++i) {
    obstacles.push_back({{1.0 + 0.5 * i, (i % 2 ? 0.4 : -0.4)}, 0.15});
  }
  vehicle::VehicleState start;
  start.v = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(PlanStep(start, {4.0, 0.0}, obstacles, config, apf, chassis));
  }
}
BENCHMARK(BM_PlanStep)->Arg(0)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace scaletwin::planner
