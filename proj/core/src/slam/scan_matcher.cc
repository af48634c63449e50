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

#include "scaletwin/slam/scan_matcher.h"

#include <Eigen/Cholesky>
#include <cmath>

#include "scaletwin/error.h"

namespace scaletwin::slam {
namespace {

struct Linearization {
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();  // J^T r
  double error = 0.0;
};

Linearization Linearize(const world::OccupancyGrid& grid,
                        std::span<const Vec2> endpoints, const Pose2D& pose) {
  Linearization lin;
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  for (const Vec2& p : endpoints) {
    const Vec2 world{pose.x + c * p.x - s * p.y, pose.y + s * p.x + c * p.y};
    const auto sample = TryInterpolateMap(grid, world);
    if (!sample) {
      lin.error += 1.0;
      continue;
    }
    const double residual = 1.0 - sample->value;
    lin.error += residual * residual;
    // dS/dtheta = (-s px - c py, c px - s py)
    const double dtheta = sample->gradient.x * (-s * p.x - c * p.y) +
                          sample->gradient.y * (c * p.x - s * p.y);
    const Eigen::Vector3d j(sample->gradient.x, sample->gradient.y, dtheta);
    lin.hessian.noalias() += j * j.transpose();
    lin.gradient += j * residual;
  }
  return lin;
}

Pose2D Apply(const Pose2D& pose, const Eigen::Vector3d& delta) {
  return {pose.x + delta.x(), pose.y + delta.y(),
          NormalizeAngle(pose.theta + delta.z())};
}

struct LevelOutcome {
  Pose2D pose;
  int iterations = 0;
  bool converged = false;
  double last_update_norm = 0.0;
};

LevelOutcome MatchLevel(const world::OccupancyGrid& grid,
                        std::span<const Vec2> endpoints, Pose2D pose,
                        const MatchConfig& config) {
  LevelOutcome out;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    ++out.iterations;
    const Linearization lin = Linearize(grid, endpoints, pose);
    const double trace = lin.hessian.trace();
    if (!(trace > 0.0)) {
      // No endpoint sees any map gradient; damping scales with the trace and
      // cannot rescue this.
      throw Error(ErrorCode::kDegenerateHessian, "no map gradient under the scan");
    }
    const Eigen::Matrix3d damped =
        lin.hessian + config.damping * trace * Eigen::Matrix3d::Identity();
    const Eigen::LDLT<Eigen::Matrix3d> solver(damped);
    if (solver.info() != Eigen::Success || !solver.isPositive() ||
        solver.vectorD().minCoeff() <= 0.0) {
      throw Error(ErrorCode::kDegenerateHessian, "Gauss-Newton Hessian singular");
    }
    Eigen::Vector3d step = solver.solve(lin.gradient);
    if (!step.allFinite()) {
      throw Error(ErrorCode::kDegenerateHessian, "Gauss-Newton step not finite");
    }
    // Step halving keeps the objective non-increasing; a step that shrinks
    // below the tolerance without improving means we are at the minimum.
    bool accepted = false;
    while (step.norm() >= config.tolerance) {
      const Pose2D candidate = Apply(pose, step);
      if (MatchObjective(grid, endpoints, candidate) <= lin.error) {
        pose = candidate;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      out.last_update_norm = 0.0;
      break;
    }
    out.last_update_norm = step.norm();
    if (out.last_update_norm < config.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.pose = pose;
  return out;
}

}  // namespace

std::vector<Vec2> ScanEndpoints(const world::LaserScan& scan) {
  std::vector<Vec2> points;
  points.reserve(scan.ranges.size());
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    if (!scan.ranges[i]) continue;
    const double a = scan.BeamAngle(i);
    points.push_back({*scan.ranges[i] * std::cos(a), *scan.ranges[i] * std::sin(a)});
  }
  return points;
}

double MatchObjective(const world::OccupancyGrid& grid,
                      std::span<const Vec2> endpoints, const Pose2D& pose) {
  double error = 0.0;
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  for (const Vec2& p : endpoints) {
    const Vec2 world{pose.x + c * p.x - s * p.y, pose.y + s * p.x + c * p.y};
    const auto sample = TryInterpolateMap(grid, world);
    const double residual = sample ? 1.0 - sample->value : 1.0;
    error += residual * residual;
  }
  return error;
}

ScanMatchResult MatchScan(const MultiResGrid& map, const world::LaserScan& scan,
                          const Pose2D& initial, const MatchConfig& config) {
  const std::vector<Vec2> endpoints = ScanEndpoints(scan);
  if (endpoints.size() < config.min_returns) {
    throw Error(ErrorCode::kInsufficientReturns,
                std::to_string(endpoints.size()) + " finite returns");
  }
  ScanMatchResult result;
  result.points = endpoints.size();
  Pose2D pose = initial;
  for (int k = map.num_levels() - 1; k >= 0; --k) {
    const LevelOutcome level = MatchLevel(map.level(k), endpoints, pose, config);
    result.total_iterations += level.iterations;
    // A coarse optimum sits on that level's cell lattice. Hand it down only
    // if the next finer level agrees it is an improvement.
    if (k > 0) {
      const auto& finer = map.level(k - 1);
      if (MatchObjective(finer, endpoints, level.pose) <=
          MatchObjective(finer, endpoints, pose)) {
        pose = level.pose;
      }
      continue;
    }
    pose = level.pose;
    result.iterations = level.iterations;
    result.converged = level.converged;
    result.last_update_norm = level.last_update_norm;
  }
  const Linearization final_lin = Linearize(map.finest(), endpoints, pose);
  result.pose = pose;
  result.final_error = final_lin.error;
  result.hessian = final_lin.hessian;
  return result;
}

}  // namespace scaletwin::slam
