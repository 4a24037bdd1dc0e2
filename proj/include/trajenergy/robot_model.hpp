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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "trajenergy/errors.hpp"

namespace trajenergy {

/// Geometry and dynamics of one link of a serial revolute chain.
///
/// The link body extends along the local +x axis of its frame; the joint
/// rotates the frame about `axis` (a unit vector expressed in the frame of
/// the link itself). The rotational inertia model is a point mass at the
/// COM plus the scalar `inertia_zz` about the joint axis through the COM.
struct LinkSpec {
  double length = 0.0;      ///< joint-to-joint distance [m]
  double mass = 0.0;        ///< [kg]
  double com_offset = 0.0;  ///< COM distance from the joint along local +x [m]
  double inertia_zz = 0.0;  ///< inertia about the joint axis through the COM [kg m^2]
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  ///< unit rotation axis
};

/// Per-joint motion limits.
struct JointLimits {
  double q_min = 0.0;  ///< [rad]
  double q_max = 0.0;  ///< [rad]
  double v_max = 0.0;  ///< [rad/s]
  double a_max = 0.0;  ///< [rad/s^2]
};

/// Kinematic/dynamic description of a serial revolute chain.
///
/// Frames chain root-to-tip: each joint rotates by q_i about its axis, then
/// the frame translates by the link length along the rotated local +x.
/// Models are immutable after construction; build them through load_robot(),
/// make_robot(), or default_seven_dof(), all of which validate.
struct RobotModel {
  std::vector<LinkSpec> links;
  std::vector<JointLimits> joint_limits;
  Eigen::Vector3d gravity{0.0, 0.0, -9.81};  ///< [m/s^2]

  int n_joints() const { return static_cast<int>(links.size()); }
};

namespace detail {

inline bool finite(double v) { return std::isfinite(v); }

}  // namespace detail

/// Checks every documented model invariant; throws ValidationError naming
/// the offending field.
inline void validate_robot(const RobotModel& model) {
  if (model.links.empty()) {
    throw ValidationError("joints: a robot needs at least one joint");
  }
  if (model.joint_limits.size() != model.links.size()) {
    throw ValidationError("joint_limits: expected one entry per joint");
  }
  if (!model.gravity.allFinite()) {
    throw ValidationError("gravity: entries must be finite");
  }
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const LinkSpec& link = model.links[i];
    const JointLimits& lim = model.joint_limits[i];
    const std::string joint = "joints[" + std::to_string(i) + "].";
    if (!detail::finite(link.length) || link.length < 0.0) {
      throw ValidationError(joint + "length: must be finite and >= 0");
    }
    if (!detail::finite(link.mass) || link.mass <= 0.0) {
      throw ValidationError(joint + "mass: must be finite and > 0");
    }
    if (!detail::finite(link.com_offset) || link.com_offset < 0.0 ||
        link.com_offset > link.length) {
      throw ValidationError(joint + "com_offset: must lie in [0, length]");
    }
    if (!detail::finite(link.inertia_zz) || link.inertia_zz < 0.0) {
      throw ValidationError(joint + "inertia_zz: must be finite and >= 0");
    }
    if (!link.axis.allFinite() ||
        std::abs(link.axis.norm() - 1.0) > 1e-9) {
      throw ValidationError(joint + "axis: must have unit norm");
    }
    if (!detail::finite(lim.q_min) || !detail::finite(lim.q_max) ||
        lim.q_min >= lim.q_max) {
      throw ValidationError(joint + "q_min/q_max: require q_min < q_max");
    }
    if (!detail::finite(lim.v_max) || lim.v_max <= 0.0) {
      throw ValidationError(joint + "v_max: must be > 0");
    }
    if (!detail::finite(lim.a_max) || lim.a_max <= 0.0) {
      throw ValidationError(joint + "a_max: must be > 0");
    }
  }
}

/// Builds and validates a model in one step.
inline RobotModel make_robot(std::vector<LinkSpec> links,
                             std::vector<JointLimits> limits,
                             const Eigen::Vector3d& gravity = {0.0, 0.0,
                                                               -9.81}) {
  RobotModel model;
  model.links = std::move(links);
  model.joint_limits = std::move(limits);
  model.gravity = gravity;
  validate_robot(model);
  return model;
}

/// The bundled 7-joint planar chain used by the demos: seven 0.3 m links of
/// 1 kg each, COM at mid-link, all joints about +z, limits +-pi, 2 rad/s,
/// 5 rad/s^2. Deterministic: every call returns an identical model.
inline RobotModel default_seven_dof() {
  std::vector<LinkSpec> links(7);
  std::vector<JointLimits> limits(7);
  for (int i = 0; i < 7; ++i) {
    links[i].length = 0.3;
    links[i].mass = 1.0;
    links[i].com_offset = 0.15;
    links[i].inertia_zz = 0.01;
    links[i].axis = Eigen::Vector3d::UnitZ();
    limits[i].q_min = -std::numbers::pi;
    limits[i].q_max = std::numbers::pi;
    limits[i].v_max = 2.0;
    limits[i].a_max = 5.0;
  }
  return make_robot(std::move(links), std::move(limits));
}

namespace detail {

inline void require_keys(const nlohmann::json& object,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional,
                         const std::string& where) {
  for (const auto& item : object.items()) {
    const std::string& key = item.key();
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
  for (const std::string& key : required) {
    if (!object.contains(key)) {
      throw ValidationError(where + ": missing key '" + key + "'");
    }
  }
}

inline double number_at(const nlohmann::json& object, const std::string& key,
                        const std::string& where) {
  const nlohmann::json& v = object.at(key);
  if (!v.is_number()) {
    throw ValidationError(where + "." + key + ": expected a number");
  }
  return v.get<double>();
}

inline Eigen::Vector3d vector3_at(const nlohmann::json& object,
                                  const std::string& key,
                                  const std::string& where) {
  const nlohmann::json& v = object.at(key);
  if (!v.is_array() || v.size() != 3) {
    throw ValidationError(where + "." + key + ": expected an array of 3 numbers");
  }
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) {
      throw ValidationError(where + "." + key + ": expected an array of 3 numbers");
    }
    out[i] = v[i].get<double>();
  }
  return out;
}

}  // namespace detail

/// Parses the strict robot schema: {"joints": [{length, mass, com_offset,
/// inertia_zz, axis, q_min, q_max, v_max, a_max}, ...], "gravity": [3]}.
/// Unknown keys are rejected. `gravity` may be omitted (standard gravity).
inline RobotModel robot_from_json(const nlohmann::json& root) {
  if (!root.is_object()) {
    throw ValidationError("robot config: expected a JSON object");
  }
  detail::require_keys(root, {"joints"}, {"gravity"}, "robot config");
  const nlohmann::json& joints = root.at("joints");
  if (!joints.is_array() || joints.empty()) {
    throw ValidationError("joints: expected a non-empty array");
  }
  RobotModel model;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const nlohmann::json& j = joints[i];
    const std::string where = "joints[" + std::to_string(i) + "]";
    if (!j.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    detail::require_keys(j,
                         {"length", "mass", "com_offset", "inertia_zz", "axis",
                          "q_min", "q_max", "v_max", "a_max"},
                         {}, where);
    LinkSpec link;
    link.length = detail::number_at(j, "length", where);
    link.mass = detail::number_at(j, "mass", where);
    link.com_offset = detail::number_at(j, "com_offset", where);
    link.inertia_zz = detail::number_at(j, "inertia_zz", where);
    link.axis = detail::vector3_at(j, "axis", where);
    JointLimits lim;
    lim.q_min = detail::number_at(j, "q_min", where);
    lim.q_max = detail::number_at(j, "q_max", where);
    lim.v_max = detail::number_at(j, "v_max", where);
    lim.a_max = detail::number_at(j, "a_max", where);
    model.links.push_back(link);
    model.joint_limits.push_back(lim);
  }
  if (root.contains("gravity")) {
    model.gravity = detail::vector3_at(root, "gravity", "robot config");
  }
  validate_robot(model);
  return model;
}

inline nlohmann::json robot_to_json(const RobotModel& model) {
  nlohmann::json joints = nlohmann::json::array();
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const LinkSpec& link = model.links[i];
    const JointLimits& lim = model.joint_limits[i];
    joints.push_back({{"length", link.length},
                      {"mass", link.mass},
                      {"com_offset", link.com_offset},
                      {"inertia_zz", link.inertia_zz},
                      {"axis", {link.axis.x(), link.axis.y(), link.axis.z()}},
                      {"q_min", lim.q_min},
                      {"q_max", lim.q_max},
                      {"v_max", lim.v_max},
                      {"a_max", lim.a_max}});
  }
  return nlohmann::json{
      {"joints", joints},
      {"gravity", {model.gravity.x(), model.gravity.y(), model.gravity.z()}}};
}

/// Loads and validates a robot config file.
/// Throws ParseError on I/O or JSON syntax problems, ValidationError when
/// the schema or a model invariant is violated.
inline RobotModel load_robot(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open robot config: " + path);
  }
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("robot config " + path + ": " + e.what());
  }
  return robot_from_json(root);
}

/// Writes the model in the schema load_robot() reads; round-trips exactly.
inline void save_robot(const RobotModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write robot config: " + path);
  }
  out << robot_to_json(model).dump(2) << '\n';
}

}  // namespace trajenergy
