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

#include "scaletwin/world/scan_log.h"

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "scaletwin/error.h"

namespace scaletwin::world {

using nlohmann::json;

std::string ScanToJsonLine(const LaserScan& scan) {
  json j;
  j["stamp"] = scan.stamp_ns;
  if (scan.pose_hint) {
    j["pose_hint"] = {scan.pose_hint->x, scan.pose_hint->y, scan.pose_hint->theta};
  } else {
    j["pose_hint"] = nullptr;
  }
  j["angle_start"] = scan.angle_start;
  j["angle_increment"] = scan.angle_increment;
  json ranges = json::array();
  for (const auto& r : scan.ranges) {
    if (r) {
      ranges.push_back(*r);
    } else {
      ranges.push_back(nullptr);
    }
  }
  j["ranges"] = std::move(ranges);
  return j.dump();
}

LaserScan ScanFromJsonLine(const std::string& line) {
  try {
    const json j = json::parse(line);
    LaserScan scan;
    scan.stamp_ns = j.at("stamp").get<std::uint64_t>();
    const auto& hint = j.at("pose_hint");
    if (!hint.is_null()) {
      if (hint.size() != 3) throw Error(ErrorCode::kMalformedLog, "pose_hint needs 3 values");
      scan.pose_hint = Pose2D{hint[0].get<double>(), hint[1].get<double>(),
                              hint[2].get<double>()};
    }
    scan.angle_start = j.at("angle_start").get<double>();
    scan.angle_increment = j.at("angle_increment").get<double>();
    for (const auto& r : j.at("ranges")) {
      if (r.is_null()) {
        scan.ranges.emplace_back(std::nullopt);
      } else {
        scan.ranges.emplace_back(r.get<double>());
      }
    }
    return scan;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedLog, e.what());
  }
}

void WriteScanLog(std::ostream& out, const std::vector<LaserScan>& scans) {
  for (const auto& scan : scans) out << ScanToJsonLine(scan) << '\n';
}

std::vector<LaserScan> ReadScanLog(std::istream& in) {
  std::vector<LaserScan> scans;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    scans.push_back(ScanFromJsonLine(line));
  }
  return scans;
}

}  // namespace scaletwin::world
