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

#ifndef SCALETWIN_WORLD_SCAN_LOG_H_
#define SCALETWIN_WORLD_SCAN_LOG_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "scaletwin/world/lidar.h"

namespace scaletwin::world {

// One JSON object per line:
//   {"stamp": ns, "pose_hint": [x, y, theta] | null, "angle_start": rad,
//    "angle_increment": rad, "ranges": [m | null, ...]}
std::string ScanToJsonLine(const LaserScan& scan);
// Throws Error(kMalformedLog).
LaserScan ScanFromJsonLine(const std::string& line);

void WriteScanLog(std::ostream& out, const std::vector<LaserScan>& scans);
std::vector<LaserScan> ReadScanLog(std::istream& in);

}  // namespace scaletwin::world

#endif  // SCALETWIN_WORLD_SCAN_LOG_H_
