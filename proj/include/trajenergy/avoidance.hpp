// Copyright 2026 The trajenergy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "trajenergy/energy.hpp"
#include "trajenergy/errors.hpp"
#include "trajenergy/kinodynamics.hpp"
#include "trajenergy/log.hpp"
#include "trajenergy/robot_model.hpp"
#include "trajenergy/trajectory.hpp"

namespace trajenergy {

/// Spherical obstacle with its repulsive-field parameters.
struct Obstacle {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();  ///< [m]
  double radius = 0.0;  ///< [m]
  double k = 1.0;       ///< field gain
  double d_safe = 1.0;  ///< activation distance from the surface [m]
};

/// Static obstacle set plus the chain frames to test against it.
/// An empty `check_points` list means all frames (link origins plus the
/// end-effector). Scenes are static for the lifetime of a planning call.
struct Scene {
  std::vector<Obstacle> obstacles;
  std::vector<int> check_points;
};

/// Repulsive field sample at one query point.
struct RepulsiveForce {
  Eigen::Vector3d vector = Eigen::Vector3d::Zero();
  double distance = std::numeric_limits<double>::infinity();  ///< surface distance d [m]
};

inline void validate_scene(const Scene& scene) {
  for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
    const Obstacle& ob = scene.obstacles[i];
    const std::string where = "obstacles[" + std::to_string(i) + "].";
    if (!ob.center.allFinite()) {
      throw ValidationError(where + "center: entries must be finite");
    }
    if (!std::isfinite(ob.radius) || ob.radius < 0.0) {
      throw ValidationError(where + "radius: must be finite and >= 0");
    }
    if (!std::isfinite(ob.k) || ob.k <= 0.0) {
      throw ValidationError(where + "k: must be > 0");
    }
    if (!std::isfinite(ob.d_safe) || ob.d_safe <= 0.0) {
      throw ValidationError(where + "d_safe: must be > 0");
    }
  }
}

/// Repulsive force of one obstacle at `point`:
///   magnitude k (1/d - 1/d_safe) / d^2 for 0 < d <= d_safe, zero beyond,
/// where d is the distance from the sphere surface and the direction is
/// the unit vector from the obstacle center through the point.
/// Throws PenetrationError when the point sits on or inside the surface.
inline RepulsiveForce repulsive_force(const Obstacle& obstacle,
                                      const Eigen::Vector3d& point) {
  const Eigen::Vector3d offset = point - obstacle.center;
  const double rho = offset.norm();
  const double d = rho - obstacle.radius;
  RepulsiveForce out;
  out.distance = d;
  if (d <= 0.0) {
    throw PenetrationError(
        "repulsive_force: point on or inside the obstacle surface (d = " +
        std::to_string(d) + ")");
  }
  if (d > obstacle.d_safe) {
    return out;
  }
  const double magnitude =
      obstacle.k * (1.0 / d - 1.0 / obstacle.d_safe) / (d * d);
  out.vector = magnitude * (offset / rho);
  return out;
}

namespace detail {

inline std::vector<int> resolve_check_points(const Scene& scene,
                                             const RobotModel& model) {
  const int n = model.n_joints();
  if (scene.check_points.empty()) {
    std::vector<int> all(n + 1);
    for (int i = 0; i <= n; ++i) all[i] = i;
    return all;
  }
  for (int idx : scene.check_points) {
    if (idx < 0 || idx > n) {
      throw ValidationError("check_points: frame index " +
                            std::to_string(idx) + " outside [0, " +
                            std::to_string(n) + "]");
    }
  }
  return scene.check_points;
}

/// Deformation driver field: identical to repulsive_force in the active
/// band, but defined for penetrating points too (a capped outward push),
/// so the loop can repair paths that start inside an obstacle.
inline Eigen::Vector3d deformation_push(const Obstacle& obstacle,
                                        const Eigen::Vector3d& point) {
  const Eigen::Vector3d offset = point - obstacle.center;
  const double rho = offset.norm();
  const Eigen::Vector3d outward =
      rho > 1e-12 ? Eigen::Vector3d(offset / rho) : Eigen::Vector3d::UnitX();
  const double d = rho - obstacle.radius;
  if (d > obstacle.d_safe) {
    return Eigen::Vector3d::Zero();
  }
  const double d_eff = std::max(d, 1e-3 * obstacle.d_safe);
  const double magnitude =
      obstacle.k * (1.0 / d_eff - 1.0 / obstacle.d_safe) / (d_eff * d_eff);
  return magnitude * outward;
}

}  // namespace detail

/// Per-check-point force sums plus the scene-wide minimum surface distance.
struct SceneForceResult {
  std::vector<Eigen::Vector3d> forces;  ///< one per resolved check point
  double min_distance = std::numeric_limits<double>::infinity();
};

/// Sums obstacle forces at every check point of the configuration q.
/// Throws PenetrationError naming the obstacle and frame when a point is
/// on or inside a surface. Empty scenes report +infinity distance.
inline SceneForceResult scene_force(const Scene& scene, const RobotModel& model,
                                    const Eigen::VectorXd& q) {
  validate_scene(scene);
  const std::vector<int> points = detail::resolve_check_points(scene, model);
  const std::vector<FramePose> poses = forward_kinematics(model, q);
  SceneForceResult out;
  out.forces.assign(points.size(), Eigen::Vector3d::Zero());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Eigen::Vector3d& position = poses[points[p]].position;
    for (std::size_t o = 0; o < scene.obstacles.size(); ++o) {
      try {
        const RepulsiveForce f = repulsive_force(scene.obstacles[o], position);
        out.forces[p] += f.vector;
        out.min_distance = std::min(out.min_distance, f.distance);
      } catch (const PenetrationError&) {
        throw PenetrationError("scene_force: obstacles[" + std::to_string(o) +
                               "] penetrated by frame " +
                               std::to_string(points[p]));
      }
    }
  }
  return out;
}

/// Minimum surface distance over all check points and obstacles at q.
/// Unlike scene_force this never throws on penetration; the result is
/// negative inside an obstacle. Empty scenes give +infinity.
inline double scene_clearance(const Scene& scene, const RobotModel& model,
                              const Eigen::VectorXd& q) {
  const std::vector<int> points = detail::resolve_check_points(scene, model);
  const std::vector<FramePose> poses = forward_kinematics(model, q);
  double min_distance = std::numeric_limits<double>::infinity();
  for (int idx : points) {
    for (const Obstacle& ob : scene.obstacles) {
      const double d = (poses[idx].position - ob.center).norm() - ob.radius;
      min_distance = std::min(min_distance, d);
    }
  }
  return min_distance;
}

struct DeformOptions {
  double step_size = 0.01;        ///< displacement gain eta
  int max_iters = 500;
  double clearance_target = -1.0; ///< < 0: largest obstacle d_safe (field fully off)
  double max_step = 0.05;         ///< per-sample joint displacement clamp [rad]
};

struct DeformationReport {
  int iterations = 0;
  double initial_min_clearance = std::numeric_limits<double>::infinity();
  double final_min_clearance = std::numeric_limits<double>::infinity();
  bool converged = true;
  std::vector<double> clearance_history;  ///< after each accepted sweep
  double avg_iteration_seconds = 0.0;
};

struct DeformResult {
  Trajectory trajectory;
  DeformationReport report;
};

namespace detail {

// Joint displacement eta * sum_f J_f^T F_f for one sampled configuration,
// clamped in norm. Columns of J_f are z_i x (p_f - o_i) for joints i
// upstream of frame f.
inline Eigen::VectorXd deformation_step(const Scene& scene,
                                        const RobotModel& model,
                                        const std::vector<int>& points,
                                        const Eigen::VectorXd& q, double eta,
                                        double max_step) {
  const ChainFrames f = chain_frames(model, q);
  const int n = model.n_joints();
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
  for (int idx : points) {
    Eigen::Vector3d force = Eigen::Vector3d::Zero();
    for (const Obstacle& ob : scene.obstacles) {
      force += deformation_push(ob, f.origin[idx]);
    }
    if (force.isZero()) continue;
    for (int i = 0; i < idx; ++i) {
      delta[i] += f.axis[i].cross(f.origin[idx] - f.origin[i]).dot(force);
    }
  }
  delta *= eta;
  const double norm = delta.norm();
  if (norm > max_step) delta *= max_step / norm;
  return delta;
}

}  // namespace detail

/// Pushes the interior samples of a trajectory out of the obstacle fields.
///
/// Each sweep displaces every interior sample by eta * J^T F (J taken at
/// every check frame), guarded by a clearance line search: if the sweep
/// would reduce the scene-wide minimum clearance, eta is halved up to 8
/// times, and the sweep is abandoned if it still regresses. Endpoints are
/// pinned and must start with clearance above the target, else
/// EndpointBlocked. The loop stops when the minimum sampled clearance
/// reaches the target or max_iters sweeps ran; falling short is reported
/// through `converged`, not an exception. The deformed samples are turned
/// back into a trajectory by re-fitting an interpolating spline.
inline DeformResult deform_trajectory(const Trajectory& traj,
                                      const Scene& scene,
                                      const RobotModel& model,
                                      const DeformOptions& opts = {}) {
  validate_scene(scene);
  if (traj.dofs() != model.n_joints()) {
    throw DimensionError("deform_trajectory: trajectory/model joint mismatch");
  }
  const std::vector<int> points = detail::resolve_check_points(scene, model);
  double target = opts.clearance_target;
  if (target < 0.0) {
    target = 0.0;
    for (const Obstacle& ob : scene.obstacles) {
      target = std::max(target, ob.d_safe);
    }
  }

  const std::vector<double> times = sample_times(traj.duration(), traj.dt());
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(times.size());
  for (double t : times) samples.push_back(traj.eval(t).q);

  DeformResult result;
  result.trajectory = traj;
  DeformationReport& report = result.report;

  if (scene.obstacles.empty()) {
    report.initial_min_clearance = std::numeric_limits<double>::infinity();
    report.final_min_clearance = report.initial_min_clearance;
    return result;
  }

  for (const Eigen::VectorXd& endpoint : {samples.front(), samples.back()}) {
    if (!(scene_clearance(scene, model, endpoint) > target)) {
      throw EndpointBlocked(
          "deform_trajectory: a trajectory endpoint sits within the "
          "clearance target of an obstacle");
    }
  }

  const auto min_clearance = [&](const std::vector<Eigen::VectorXd>& configs) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& q : configs) {
      lowest = std::min(lowest, scene_clearance(scene, model, q));
    }
    return lowest;
  };

  double clearance_now = min_clearance(samples);
  report.initial_min_clearance = clearance_now;
  report.final_min_clearance = clearance_now;
  if (clearance_now >= target) {
    return result;  // already clear; trajectory returned untouched
  }

  const auto t_begin = std::chrono::steady_clock::now();
  bool any_accepted = false;
  while (report.iterations < opts.max_iters && clearance_now < target) {
    ++report.iterations;
    bool accepted = false;
    double eta = opts.step_size;
    for (int halving = 0; halving <= 8; ++halving) {
      std::vector<Eigen::VectorXd> candidate = samples;
      double moved = 0.0;
      for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
        const Eigen::VectorXd delta = detail::deformation_step(
            scene, model, points, samples[k], eta, opts.max_step);
        moved = std::max(moved, delta.norm());
        candidate[k] += delta;
      }
      if (moved < 1e-15) break;  // field inactive; target unreachable
      const double candidate_clearance = min_clearance(candidate);
      if (candidate_clearance >= clearance_now) {
        samples = std::move(candidate);
        clearance_now = candidate_clearance;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // stagnated; further sweeps would repeat
    any_accepted = true;
    report.clearance_history.push_back(clearance_now);
    log_debug("deform sweep " + std::to_string(report.iterations) +
              ": min clearance " + std::to_string(clearance_now));
  }
  const auto t_end = std::chrono::steady_clock::now();
  if (report.iterations > 0) {
    report.avg_iteration_seconds =
        std::chrono::duration<double>(t_end - t_begin).count() /
        report.iterations;
  }
  report.converged = clearance_now >= target;

  if (any_accepted) {
    std::vector<Waypoint> wps(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
      wps[k] = Waypoint{times[k], samples[k]};
    }
    result.trajectory = spline_through_waypoints(wps, traj.dt());
    report.final_min_clearance = clearance_now;
  }
  return result;
}

/// Reads a scene file: JSON array of {"center": [x,y,z], "radius", "k",
/// "d_safe"}.
inline std::vector<Obstacle> load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scene file: " + path);
  }
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("scene file " + path + ": " + e.what());
  }
  if (!root.is_array()) {
    throw ValidationError("scene: expected a JSON array of obstacles");
  }
  std::vector<Obstacle> obstacles;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const nlohmann::json& item = root[i];
    const std::string where = "obstacles[" + std::to_string(i) + "]";
    if (!item.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    detail::require_keys(item, {"center", "radius", "k", "d_safe"}, {}, where);
    Obstacle ob;
    ob.center = detail::vector3_at(item, "center", where);
    ob.radius = detail::number_at(item, "radius", where);
    ob.k = detail::number_at(item, "k", where);
    ob.d_safe = detail::number_at(item, "d_safe", where);
    obstacles.push_back(ob);
  }
  Scene scene;
  scene.obstacles = obstacles;
  validate_scene(scene);
  return obstacles;
}

}  // namespace trajenergy
