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

#ifndef SCALETWIN_HARNESS_PROFILER_H_
#define SCALETWIN_HARNESS_PROFILER_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scaletwin/harness/scenario_config.h"

namespace scaletwin::harness {

struct TaskProfile {
  std::string label;
  // Mean process CPU over the run as a share of all CPUs available to the
  // process, percent.
  double cpu_percent = 0.0;
  // Peak resident set size over total memory, percent.
  double mem_percent = 0.0;
  int samples = 0;
  bool available = true;
  std::string note;
};

// Process-level counters read from /proc.
struct ProcessSample {
  double cpu_seconds = 0.0;  // user + system
  std::uint64_t rss_bytes = 0;
};

// nullopt where /proc is unavailable.
std::optional<ProcessSample> SampleProcess();
std::optional<std::uint64_t> TotalMemoryBytes();
// CPUs in the process affinity mask.
int AvailableCpus();

// Runs `workload` on the calling thread while a sampler thread reads the
// process counters at `sample_hz`. Returns an unavailable row when sampling
// is not supported.
TaskProfile ProfileWorkload(const std::string& label,
                            const std::function<void()>& workload,
                            double sample_hz);

// Calibration workloads: sleep, and one thread spinning, for `seconds`.
void IdleWorkload(double seconds);
void SpinWorkload(double seconds);

// One row per ladder entry of cfg.profile, each a real-time run of
// cfg.profile.duration seconds, followed by the "idle" and "spin"
// calibration rows when enabled.
std::vector<TaskProfile> ProfileTasks(const ScenarioConfig& cfg);

void WriteProfileCsv(std::ostream& out, const std::vector<TaskProfile>& rows);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_PROFILER_H_
