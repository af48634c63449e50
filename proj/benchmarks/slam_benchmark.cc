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

#include <random>

#include <benchmark/benchmark.h>

#include "scaletwin/slam/multires_grid.h"
#include "scaletwin/slam/scan_matcher.h"
#include "scaletwin/world/lidar.h"
#include "scaletwin/world/world_model.h"

namespace scaletwin::slam {
namespace {

MultiResGrid SquareRoomMap() {
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  const world::LidarSpec spec = world::LidarSpec::G2(10.0, 0.0);
  MultiResGrid map = MultiResGrid::CenteredOn(MapConfig{}, {0.0, 0.0});
  for (int i = 0; i < 10; ++i) IntegrateScan(map, {}, world::SimulateScan(room, {}, spec, i));
  return map;
}

void BM_MatchScan(benchmark::State& state) {
  const MultiResGrid map = SquareRoomMap();
  const world::WorldModel room = world::MakeSquareRoom(4.0);
  const world::LaserScan scan =
      world::SimulateScan(room, {}, world::LidarSpec::G2(10.0, 0.01), 99);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto _ : state) {
    const Pose2D init{0.1 * u(rng), 0.1 * u(rng), 0.05 * u(rng)};
    benchmark::DoNotOptimize(MatchScan(map, scan, init));
  }
}
BENCHMARK(BM_MatchScan)->Unit(benchmark::kMicrosecond);

void BM_IntegrateScan(benchmark::State& state) {
  const world::WorldModel office = world::MakeOfficeWorld();
  const world::LaserScan scan =
      world::SimulateScan(office, {0.5, 0.5, 0.0}, world::LidarSpec::G2(10.0, 0.01), 3);
  MultiResGrid map = MultiResGrid::CenteredOn(MapConfig{}, {0.5, 0.5});
  for (auto _ : state) IntegrateScan(map, {0.5, 0.5, 0.0}, scan);
}
BENCHMARK(BM_IntegrateScan)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace scaletwin::slam
