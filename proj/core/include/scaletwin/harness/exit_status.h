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

#ifndef SCALETWIN_HARNESS_EXIT_STATUS_H_
#define SCALETWIN_HARNESS_EXIT_STATUS_H_

#include "scaletwin/error.h"

namespace scaletwin::harness {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitData = 5;
inline constexpr int kExitUnsupported = 6;
inline constexpr int kExitRuntime = 7;

struct ExitStatus {
  int code;
  const char* category;  // "config", "io", "data", "unsupported", "runtime"
};

ExitStatus ExitStatusFor(ErrorCode code);

}  // namespace scaletwin::harness

#endif  // SCALETWIN_HARNESS_EXIT_STATUS_H_
