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

#include "scaletwin/harness/profiler.h"

#include <sched.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "scaletwin/harness/scenario.h"

namespace scaletwin::harness {
namespace {

using Clock = std::chrono::steady_clock;

// Field values of /proc/self/status lines such as "VmRSS:  1234 kB".
std::optional<std::uint64_t> ReadKilobytes(const char* path, const std::string& key) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ":", 0) != 0) continue;
    std::istringstream fields(line.substr(key.size() + 1));
    std::uint64_t kb = 0;
    if (fields >> kb) return kb * 1024;
  }
  return std::nullopt;
}

std::string FormatPercent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

}  // namespace

std::optional<ProcessSample> SampleProcess() {
  std::ifstream in("/proc/self/stat");
  std::string text;
  if (!std::getline(in, text)) return std::nullopt;
  // The command name may contain spaces; fields resume after its ')'.
  const auto close = text.rfind(')');
  if (close == std::string::npos) return std::nullopt;
  std::istringstream fields(text.substr(close + 2));
  std::string field;
  // Fields 3..13 precede utime (14) and stime (15).
  for (int i = 3; i <= 13; ++i) fields >> field;
  unsigned long long utime = 0, stime = 0;
  if (!(fields >> utime >> stime)) return std::nullopt;
  const long ticks = sysconf(_SC_CLK_TCK);
  const auto rss = ReadKilobytes("/proc/self/status", "VmRSS");
  if (ticks <= 0 || !rss) return std::nullopt;
  return ProcessSample{static_cast<double>(utime + stime) / static_cast<double>(ticks), *rss};
}

std::optional<std::uint64_t> TotalMemoryBytes() {
  return ReadKilobytes("/proc/meminfo", "MemTotal");
}

int AvailableCpus() {
  cpu_set_t set;
  CPU_ZERO(&set);
  if (sched_getaffinity(0, sizeof(set), &set) == 0) {
    const int n = CPU_COUNT(&set);
    if (n > 0) return n;
  }
  const long n = sysconf(_SC_NPROCESSORS_ONLN);
  return n > 0 ? static_cast<int>(n) : 1;
}

TaskProfile ProfileWorkload(const std::string& label,
                            const std::function<void()>& workload,
                            double sample_hz) {
  TaskProfile row;
  row.label = label;
  const auto first = SampleProcess();
  const auto total_memory = TotalMemoryBytes();
  if (!first || !total_memory || *total_memory == 0) {
    row.available = false;
    row.note = "sampling-unsupported";
    workload();
    return row;
  }

  std::atomic<bool> done{false};
  std::uint64_t peak_rss = first->rss_bytes;
  int samples = 1;
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(1.0 / sample_hz));
  const auto start = Clock::now();
  std::thread sampler([&] {
    auto next = start + period;
    while (!done.load()) {
      std::this_thread::sleep_until(next);
      next += period;
      if (const auto s = SampleProcess()) {
        peak_rss = std::max(peak_rss, s->rss_bytes);
        ++samples;
      }
    }
  });
  workload();
  done.store(true);
  sampler.join();
  const auto last = SampleProcess();
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();

  const double cpu = last ? last->cpu_seconds - first->cpu_seconds : 0.0;
  if (last) peak_rss = std::max(peak_rss, last->rss_bytes);
  row.samples = samples + (last ? 1 : 0);
  row.cpu_percent = wall > 0.0 ? 100.0 * cpu / wall / AvailableCpus() : 0.0;
  row.mem_percent = 100.0 * static_cast<double>(peak_rss) /
                    static_cast<double>(*total_memory);
  return row;
}

void IdleWorkload(double seconds) {
  const auto end = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(seconds));
  while (Clock::now() < end) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
}

void SpinWorkload(double seconds) {
  const auto end = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(seconds));
  volatile std::uint64_t sink = 0;
  while (Clock::now() < end) {
    for (int i = 0; i < 1000; ++i) sink = sink + static_cast<std::uint64_t>(i);
  }
}

std::vector<TaskProfile> ProfileTasks(const ScenarioConfig& cfg) {
  std::vector<TaskProfile> rows;
  const double hz = cfg.profile.sample_hz;
  for (const TaskSet& tasks : cfg.profile.ladder) {
    ScenarioConfig row_cfg = cfg;
    row_cfg.tasks = tasks;
    row_cfg.duration = cfg.profile.duration;
    row_cfg.realtime = true;
    // The load must last the whole row.
    row_cfg.stop_on_goal = false;
    RunOptions options;
    options.write_artifacts = false;
    rows.push_back(ProfileWorkload(
        tasks.Label(), [&] { RunScenario(row_cfg, options); }, hz));
  }
  if (cfg.profile.calibration) {
    const double seconds = cfg.profile.duration;
    rows.push_back(ProfileWorkload("idle", [&] { IdleWorkload(seconds); }, hz));
    rows.push_back(ProfileWorkload("spin", [&] { SpinWorkload(seconds); }, hz));
  }
  return rows;
}

void WriteProfileCsv(std::ostream& out, const std::vector<TaskProfile>& rows) {
  out << "task,cpu_percent,mem_percent,samples,status\n";
  for (const auto& r : rows) {
    out << '"' << r.label << "\",";
    if (r.available) {
      out << FormatPercent(r.cpu_percent) << ',' << FormatPercent(r.mem_percent)
          << ',' << r.samples << ",ok\n";
    } else {
      out << ",," << r.samples << ",unavailable (" << r.note << ")\n";
    }
  }
}

}  // namespace scaletwin::harness
