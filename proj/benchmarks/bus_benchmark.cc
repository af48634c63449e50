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

#include "scaletwin/bus/envelope.h"

namespace scaletwin::bus {
namespace {

Envelope Sample(std::size_t payload_bytes) {
  return {"scan", 42, 1'000'000, Bytes(payload_bytes, 0xAB)};
}

void BM_Encode(benchmark::State& state) {
  const Envelope e = Sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EncodeEnvelope(e));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encode)->Arg(16)->Arg(1024)->Arg(8192);

void BM_Decode(benchmark::State& state) {
  const Bytes frame = EncodeEnvelope(Sample(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(DecodeEnvelope(frame));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decode)->Arg(16)->Arg(1024)->Arg(8192);

}  // namespace
}  // namespace scaletwin::bus
