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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "trajenergy/avoidance.hpp"
#include "trajenergy/energy.hpp"
#include "trajenergy/errors.hpp"
#include "trajenergy/log.hpp"
#include "trajenergy/robot_model.hpp"
#include "trajenergy/simeval.hpp"
#include "trajenergy/trajectory.hpp"

namespace trajenergy {

enum class Generator { kCubic, kSinusoidal };

inline Generator generator_from_string(const std::string& name) {
  if (name == "cubic") return Generator::kCubic;
  if (name == "sinusoidal") return Generator::kSinusoidal;
  throw ValidationError("generator: expected 'cubic' or 'sinusoidal', got '" +
                        name + "'");
}

/// One pipeline run: inputs, generator choice, and stage toggles.
/// Empty robot path selects the bundled 7-joint model; empty waypoint path
/// falls back to the start/goal pair.
struct ExperimentConfig {
  std::string robot_path;
  std::string scene_path;
  std::string waypoints_path;
  Eigen::VectorXd start;  ///< used when waypoints_path is empty
  Eigen::VectorXd goal;
  double duration = 2.0;  ///< start/goal motion time [s]
  Generator generator = Generator::kSinusoidal;
  double lambda = 0.1;
  double dt = 0.01;
  bool scaling = true;
  bool avoidance = true;  ///< no-op unless a scene is given
  int seed = 0;           ///< reserved for randomized fixtures
};

/// Everything a pipeline run produces.
struct ExperimentResult {
  RobotModel robot;
  Trajectory trajectory;
  MetricsReport metrics;
  EnergyBreakdown energy;
  DeformationReport deformation;
  bool deformed = false;
  double alpha = 1.0;  ///< applied velocity-scaling dilation
};

namespace detail {

inline Eigen::VectorXd vector_at(const nlohmann::json& object,
                                 const std::string& key,
                                 const std::string& where) {
  const nlohmann::json& v = object.at(key);
  if (!v.is_array() || v.empty()) {
    throw ValidationError(where + "." + key + ": expected a non-empty array of numbers");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ValidationError(where + "." + key + ": expected a non-empty array of numbers");
    }
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

inline std::string resolve_relative(const std::string& base_dir,
                                    const std::string& path) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

inline std::string string_at(const nlohmann::json& object,
                             const std::string& key,
                             const std::string& where) {
  const nlohmann::json& v = object.at(key);
  if (!v.is_string()) {
    throw ValidationError(where + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

inline bool bool_at(const nlohmann::json& object, const std::string& key,
                    const std::string& where) {
  const nlohmann::json& v = object.at(key);
  if (!v.is_boolean()) {
    throw ValidationError(where + "." + key + ": expected a boolean");
  }
  return v.get<bool>();
}

}  // namespace detail

/// Parses an experiment config object. Relative robot/scene/waypoint paths
/// are resolved against `base_dir` (usually the config file's directory).
inline ExperimentConfig config_from_json(const nlohmann::json& root,
                                         const std::string& base_dir = "") {
  if (!root.is_object()) {
    throw ValidationError("experiment config: expected a JSON object");
  }
  detail::require_keys(root, {},
                       {"robot", "scene", "waypoints", "start", "goal",
                        "duration", "generator", "lambda", "dt", "scale",
                        "avoid", "seed"},
                       "experiment config");
  ExperimentConfig cfg;
  const std::string where = "experiment config";
  if (root.contains("robot")) {
    cfg.robot_path = detail::resolve_relative(base_dir, detail::string_at(root, "robot", where));
  }
  if (root.contains("scene")) {
    cfg.scene_path = detail::resolve_relative(base_dir, detail::string_at(root, "scene", where));
  }
  if (root.contains("waypoints")) {
    cfg.waypoints_path = detail::resolve_relative(base_dir, detail::string_at(root, "waypoints", where));
  }
  if (root.contains("start")) cfg.start = detail::vector_at(root, "start", where);
  if (root.contains("goal")) cfg.goal = detail::vector_at(root, "goal", where);
  if (root.contains("duration")) cfg.duration = detail::number_at(root, "duration", where);
  if (root.contains("generator")) {
    cfg.generator = generator_from_string(detail::string_at(root, "generator", where));
  }
  if (root.contains("lambda")) cfg.lambda = detail::number_at(root, "lambda", where);
  if (root.contains("dt")) cfg.dt = detail::number_at(root, "dt", where);
  if (root.contains("scale")) cfg.scaling = detail::bool_at(root, "scale", where);
  if (root.contains("avoid")) cfg.avoidance = detail::bool_at(root, "avoid", where);
  if (root.contains("seed")) cfg.seed = static_cast<int>(detail::number_at(root, "seed", where));
  if (!(cfg.dt > 0.0)) throw ValidationError("dt: must be > 0");
  if (cfg.lambda < 0.0) throw ValidationError("lambda: must be >= 0");
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open experiment config: " + path);
  }
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("experiment config " + path + ": " + e.what());
  }
  return config_from_json(root, std::filesystem::path(path).parent_path().string());
}

inline RobotModel load_config_robot(const ExperimentConfig& cfg) {
  return cfg.robot_path.empty() ? default_seven_dof()
                                : load_robot(cfg.robot_path);
}

/// Builds the requested baseline trajectory (before avoidance/scaling).
inline Trajectory generate_trajectory(const ExperimentConfig& cfg,
                                      const RobotModel& model) {
  const int n = model.n_joints();
  std::vector<Waypoint> wps;
  if (!cfg.waypoints_path.empty()) {
    wps = load_waypoints(cfg.waypoints_path);
  } else {
    Eigen::VectorXd start = cfg.start;
    Eigen::VectorXd goal = cfg.goal;
    if (start.size() == 0) start = Eigen::VectorXd::Zero(n);
    if (goal.size() == 0) goal = Eigen::VectorXd::Constant(n, 0.5);
    if (!(cfg.duration > 0.0)) {
      throw ValidationError("duration: must be > 0");
    }
    wps.push_back(Waypoint{0.0, start});
    wps.push_back(Waypoint{cfg.duration, goal});
  }
  for (const Waypoint& wp : wps) {
    if (wp.q.size() != n) {
      throw DimensionError("waypoints: expected " + std::to_string(n) +
                           " joint values, got " + std::to_string(wp.q.size()));
    }
  }
  if (cfg.generator == Generator::kCubic) {
    return spline_through_waypoints(wps, cfg.dt);
  }
  SinusoidalProfile profile;
  profile.q_start = wps.front().q;
  profile.q_end = wps.back().q;
  profile.duration = wps.back().t - wps.front().t;
  return sinusoidal(profile, cfg.dt);
}

/// Full plan -> avoid -> scale -> replay pipeline.
/// Throws NotConvergedError when avoidance is requested, a scene is given,
/// and deformation fails to reach the clearance target.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.robot = load_config_robot(cfg);
  result.trajectory = generate_trajectory(cfg, result.robot);
  log_info("generated trajectory: duration " +
           std::to_string(result.trajectory.duration()) + " s, seed " +
           std::to_string(cfg.seed));

  if (!cfg.scene_path.empty() && cfg.avoidance) {
    Scene scene;
    scene.obstacles = load_scene(cfg.scene_path);
    DeformResult deformed =
        deform_trajectory(result.trajectory, scene, result.robot);
    result.deformation = deformed.report;
    result.deformed = true;
    if (!deformed.report.converged) {
      throw NotConvergedError(
          "avoidance did not reach the clearance target after " +
          std::to_string(deformed.report.iterations) + " sweeps (clearance " +
          std::to_string(deformed.report.final_min_clearance) + ")");
    }
    result.trajectory = std::move(deformed.trajectory);
  }

  if (cfg.scaling) {
    ScaleResult scaled = scale_velocity(result.trajectory, result.robot);
    result.alpha = scaled.alpha;
    result.trajectory = std::move(scaled.trajectory);
    log_info("velocity scaling alpha = " + std::to_string(result.alpha));
  }

  const EnergyParams params{cfg.lambda, cfg.dt};
  result.metrics = replay(result.robot, result.trajectory, params);
  result.energy = energy_cost(result.robot, result.trajectory, params);
  return result;
}

}  // namespace trajenergy
