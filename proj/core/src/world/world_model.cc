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

#include "scaletwin/world/world_model.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "scaletwin/error.h"

namespace scaletwin::world {
namespace {

void AddBox(std::vector<Segment>& out, Vec2 lo, Vec2 hi) {
  const Vec2 a{lo.x, lo.y}, b{hi.x, lo.y}, c{hi.x, hi.y}, d{lo.x, hi.y};
  out.push_back({a, b});
  out.push_back({b, c});
  out.push_back({c, d});
  out.push_back({d, a});
}

}  // namespace

WorldModel::WorldModel(std::vector<Segment> segments, Bounds bounds)
    : segments_(std::move(segments)), bounds_(bounds) {
  auto finite = [](Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  for (const auto& s : segments_) {
    if (!finite(s.a) || !finite(s.b)) {
      throw Error(ErrorCode::kInvalidArgument, "segment with non-finite coordinate");
    }
  }
  if (!finite(bounds_.min) || !finite(bounds_.max) ||
      bounds_.min.x > bounds_.max.x || bounds_.min.y > bounds_.max.y) {
    throw Error(ErrorCode::kInvalidArgument, "invalid world bounds");
  }
}

std::optional<double> Raycast(const WorldModel& world, Vec2 origin,
                              double angle) {
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : world.segments()) {
    // origin + t * dir = s.a + u * (s.b - s.a), t >= 0, u in [0, 1].
    const Vec2 edge = s.b - s.a;
    const double denom = dir.Cross(edge);
    if (denom == 0.0) continue;  // parallel
    const Vec2 to_a = s.a - origin;
    const double t = to_a.Cross(edge) / denom;
    const double u = to_a.Cross(dir) / denom;
    if (t >= 0.0 && u >= 0.0 && u <= 1.0 && t < best) best = t;
  }
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

double DistanceToSegment(Vec2 p, const Segment& s) {
  const Vec2 edge = s.b - s.a;
  const double len2 = edge.Dot(edge);
  double u = len2 > 0.0 ? (p - s.a).Dot(edge) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return (p - (s.a + u * edge)).Norm();
}

double DistanceToNearestWall(const WorldModel& world, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : world.segments()) best = std::min(best, DistanceToSegment(p, s));
  return best;
}

WorldModel MakeSquareRoom(double side) {
  const double h = 0.5 * side;
  std::vector<Segment> segments;
  AddBox(segments, {-h, -h}, {h, h});
  return WorldModel(std::move(segments), Bounds{{-h, -h}, {h, h}});
}

WorldModel MakeOfficeWorld() {
  std::vector<Segment> s;
  AddBox(s, {-2.5, -1.5}, {4.5, 4.5});   // outer walls
  AddBox(s, {0.4, 0.9}, {1.6, 2.1});     // central block
  s.push_back({{3.5, 4.5}, {3.5, 2.5}});  // room partition, top right
  s.push_back({{3.5, 1.0}, {4.5, 1.0}});  // room partition, right
  s.push_back({{-2.5, 1.0}, {-1.7, 1.0}});  // alcove, left
  s.push_back({{1.0, -1.5}, {1.0, -1.0}});  // door jamb, bottom
  AddBox(s, {-1.95, 3.35}, {-1.65, 3.65});  // pillar
  AddBox(s, {3.65, -0.95}, {3.95, -0.65});  // pillar
  AddBox(s, {0.5, 3.8}, {1.5, 4.1});        // desk
  return WorldModel(std::move(s), Bounds{{-2.5, -1.5}, {4.5, 4.5}});
}

bool IsBuiltinWorld(const std::string& name) {
  return name == "square4" || name == "open10" || name == "office";
}

WorldModel BuiltinWorld(const std::string& name) {
  if (name == "square4") return MakeSquareRoom(4.0);
  if (name == "open10") return MakeSquareRoom(10.0);
  if (name == "office") return MakeOfficeWorld();
  throw Error(ErrorCode::kWorldLoadFailure, "no builtin world '" + name + "'");
}

WorldModel LoadWorldFile(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kWorldLoadFailure, path + ": " + e.what());
  }
  try {
    const auto b = root["bounds"].as<std::vector<double>>();
    if (b.size() != 4) throw Error(ErrorCode::kWorldLoadFailure, "bounds needs 4 numbers");
    std::vector<Segment> segments;
    for (const auto& node : root["segments"]) {
      const auto v = node.as<std::vector<double>>();
      if (v.size() != 4) {
        throw Error(ErrorCode::kWorldLoadFailure, "segment needs 4 numbers");
      }
      segments.push_back({{v[0], v[1]}, {v[2], v[3]}});
    }
    return WorldModel(std::move(segments), Bounds{{b[0], b[1]}, {b[2], b[3]}});
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kWorldLoadFailure, path + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kWorldLoadFailure) throw;
    throw Error(ErrorCode::kWorldLoadFailure, path + ": " + e.what());
  }
}

void SaveWorldFile(const WorldModel& world, const std::string& path) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  const auto& b = world.bounds();
  out << YAML::Key << "bounds" << YAML::Value << YAML::Flow
      << std::vector<double>{b.min.x, b.min.y, b.max.x, b.max.y};
  out << YAML::Key << "segments" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : world.segments()) {
    out << YAML::Flow << std::vector<double>{s.a.x, s.a.y, s.b.x, s.b.y};
  }
  out << YAML::EndSeq << YAML::EndMap;
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path);
  file << out.c_str() << "\n";
}

}  // namespace scaletwin::world
