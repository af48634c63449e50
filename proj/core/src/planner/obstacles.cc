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

#include "scaletwin/planner/obstacles.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "scaletwin/error.h"

namespace scaletwin::planner {
namespace {

struct Circle {
  Vec2 center;
  double radius = 0.0;

  bool Contains(Vec2 p) const {
    return (p - center).Norm() <= radius * (1.0 + 1e-12) + 1e-12;
  }
};

Circle FromTwo(Vec2 a, Vec2 b) {
  return {0.5 * (a + b), 0.5 * (a - b).Norm()};
}

Circle FromThree(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * ab.Cross(ac);
  if (std::abs(d) < 1e-14) {
    // Collinear: the widest pair spans the others.
    Circle best = FromTwo(a, b);
    for (const Circle& cand : {FromTwo(a, c), FromTwo(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = ab.Dot(ab);
  const double ac2 = ac.Dot(ac);
  const Vec2 offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + offset, offset.Norm()};
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Obstacle MinimalEnclosingCircle(std::span<const Vec2> input) {
  if (input.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "enclosing circle of no points");
  }
  std::vector<Vec2> pts(input.begin(), input.end());
  std::mt19937 rng(0);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (c.Contains(pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (c.Contains(pts[j])) continue;
      c = FromTwo(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!c.Contains(pts[k])) c = FromThree(pts[i], pts[j], pts[k]);
      }
    }
  }
  return {c.center, c.radius};
}

std::vector<Obstacle> ExtractObstacles(const world::LaserScan& scan,
                                       const Pose2D& pose,
                                       const ObstacleExtractionConfig& config) {
  std::vector<Vec2> points;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    if (!scan.ranges[i]) continue;
    const double a = scan.BeamAngle(i);
    points.push_back(pose.Transform({*scan.ranges[i] * std::cos(a),
                                     *scan.ranges[i] * std::sin(a)}));
  }
  if (points.empty()) return {};

  DisjointSets sets(points.size());
  const double eps2 = config.cluster_eps * config.cluster_eps;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Vec2 d = points[i] - points[j];
      if (d.Dot(d) <= eps2) sets.Union(i, j);
    }
  }
  // Clusters keep scan order, keyed by their smallest member index.
  std::vector<std::vector<Vec2>> clusters;
  std::vector<std::size_t> cluster_of(points.size(), SIZE_MAX);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t root = sets.Find(i);
    if (cluster_of[root] == SIZE_MAX) {
      cluster_of[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[cluster_of[root]].push_back(points[i]);
  }

  std::vector<Obstacle> obstacles;
  auto emit = [&](std::span<const Vec2> members) {
    Obstacle o = MinimalEnclosingCircle(members);
    o.radius = std::max(o.radius, config.min_radius);
    obstacles.push_back(o);
  };
  for (const auto& cluster : clusters) {
    if (MinimalEnclosingCircle(cluster).radius <= config.max_radius) {
      emit(cluster);
      continue;
    }
    // Greedy chunks along scan order, each within max_radius.
    std::size_t begin = 0;
    while (begin < cluster.size()) {
      std::size_t end = begin + 1;
      while (end < cluster.size() &&
             MinimalEnclosingCircle(std::span(cluster).subspan(begin, end + 1 - begin))
                     .radius <= config.max_radius) {
        ++end;
      }
      emit(std::span(cluster).subspan(begin, end - begin));
      begin = end;
    }
  }
  return obstacles;
}

}  // namespace scaletwin::planner
