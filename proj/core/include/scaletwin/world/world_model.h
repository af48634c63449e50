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

#ifndef SCALETWIN_WORLD_WORLD_MODEL_H_
#define SCALETWIN_WORLD_WORLD_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "scaletwin/geometry.h"

namespace scaletwin::world {

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Bounds {
  Vec2 min;
  Vec2 max;

  bool Contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

// Ground-truth environment made of line segments. Immutable once built.
class WorldModel {
 public:
  WorldModel(std::vector<Segment> segments, Bounds bounds);

  const std::vector<Segment>& segments() const { return segments_; }
  const Bounds& bounds() const { return bounds_; }

 private:
  std::vector<Segment> segments_;
  Bounds bounds_;
};

// Distance along the ray from `origin` at heading `angle` to the nearest
// segment, or nullopt if the ray hits nothing.
std::optional<double> Raycast(const WorldModel& world, Vec2 origin, double angle);

// Shortest distance from `p` to segment `s`.
double DistanceToSegment(Vec2 p, const Segment& s);
double DistanceToNearestWall(const WorldModel& world, Vec2 p);

// Builtin environments: "square4" and "open10" are empty 4 m and 10 m square
// rooms centered on the origin; "office" is a 7 m x 6 m floor with a central block the loop
// scenario drives around, a partition, pillars and furniture.
WorldModel MakeSquareRoom(double side);
WorldModel MakeOfficeWorld();
bool IsBuiltinWorld(const std::string& name);
WorldModel BuiltinWorld(const std::string& name);

// YAML world file:
//   bounds: [xmin, ymin, xmax, ymax]
//   segments: [[x1, y1, x2, y2], ...]
// Throws Error(kWorldLoadFailure).
WorldModel LoadWorldFile(const std::string& path);
void SaveWorldFile(const WorldModel& world, const std::string& path);

}  // namespace scaletwin::world

#endif  // SCALETWIN_WORLD_WORLD_MODEL_H_
