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

#include <benchmark/benchmark.h>

#include "scaletwin/world/lidar.h"
#include "scaletwin/world/world_model.h"

namespace scaletwin::world {
namespace {

void BM_Raycast(benchmark::State& state) {
  const WorldModel office = MakeOfficeWorld();
  double angle = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Raycast(office, {0.5, 0.5}, angle));
    angle += 0.01;
  }
}
BENCHMARK(BM_Raycast);

void BM_SimulateScan(benchmark::State& state) {
  const WorldModel office = MakeOfficeWorld();
  const LidarSpec spec = LidarSpec::G2(static_cast<double>(state.range(0)), 0.01);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateScan(office, {0.5, 0.5, 0.3}, spec, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * BeamsPerScan(spec));
}
BENCHMARK(BM_SimulateScan)->Arg(5)->Arg(10)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace scaletwin::world
