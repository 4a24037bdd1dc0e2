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

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "trajenergy/errors.hpp"
#include "trajenergy/log.hpp"
#include "trajenergy/robot_model.hpp"

namespace trajenergy {

/// Joint-space state at one instant.
struct JointState {
  Eigen::VectorXd q;    ///< [rad]
  Eigen::VectorXd qd;   ///< [rad/s]
  Eigen::VectorXd qdd;  ///< [rad/s^2]
  Eigen::VectorXd tau;  ///< [N m]
};

/// World pose of one chain frame.
struct FramePose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
};

namespace detail {

inline void check_joint_vector(const RobotModel& model,
                               const Eigen::VectorXd& v, const char* name) {
  if (v.size() != model.n_joints()) {
    throw DimensionError(std::string(name) + ": expected " +
                         std::to_string(model.n_joints()) + " entries, got " +
                         std::to_string(v.size()));
  }
  if (!v.allFinite()) {
    throw DimensionError(std::string(name) + ": entries must be finite");
  }
}

/// Per-joint world-frame quantities shared by kinematics and dynamics.
struct ChainFrames {
  std::vector<Eigen::Matrix3d> rotation;  // cumulative, one per link
  std::vector<Eigen::Vector3d> origin;    // joint origins plus end-effector
  std::vector<Eigen::Vector3d> axis;      // world joint axes
  std::vector<Eigen::Vector3d> com;       // world link COM positions
};

inline ChainFrames chain_frames(const RobotModel& model,
                                const Eigen::VectorXd& q) {
  const int n = model.n_joints();
  ChainFrames f;
  f.rotation.resize(n);
  f.origin.resize(n + 1);
  f.axis.resize(n);
  f.com.resize(n);
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    const LinkSpec& link = model.links[i];
    rot = rot * Eigen::AngleAxisd(q[i], link.axis).toRotationMatrix();
    f.rotation[i] = rot;
    f.origin[i] = pos;
    f.axis[i] = rot * link.axis;
    f.com[i] = pos + rot * Eigen::Vector3d(link.com_offset, 0.0, 0.0);
    pos += rot * Eigen::Vector3d(link.length, 0.0, 0.0);
  }
  f.origin[n] = pos;
  return f;
}

}  // namespace detail

/// World poses of the chain: pose[i] for i < n is the frame of link i+1
/// (origin at joint i+1), pose[n] is the end-effector (tip of the last
/// link, oriented like the last link frame). n_joints + 1 poses in total.
///
/// Joint values outside the model limits are legal kinematic queries; they
/// only produce a warning at info verbosity.
inline std::vector<FramePose> forward_kinematics(const RobotModel& model,
                                                 const Eigen::VectorXd& q) {
  detail::check_joint_vector(model, q, "q");
  const int n = model.n_joints();
  for (int i = 0; i < n; ++i) {
    if (q[i] < model.joint_limits[i].q_min ||
        q[i] > model.joint_limits[i].q_max) {
      log_warn("forward_kinematics: q[" + std::to_string(i) +
               "] outside joint limits");
    }
  }
  const detail::ChainFrames f = detail::chain_frames(model, q);
  std::vector<FramePose> poses(n + 1);
  for (int i = 0; i < n; ++i) {
    poses[i].position = f.origin[i];
    poses[i].orientation = f.rotation[i];
  }
  poses[n].position = f.origin[n];
  poses[n].orientation = f.rotation[n - 1];
  return poses;
}

/// Linear-velocity Jacobian (3 x n) of chain frame `frame` (an index into
/// the forward_kinematics output, 0..n). Columns of joints downstream of
/// the frame are zero.
inline Eigen::Matrix3Xd point_jacobian(const RobotModel& model,
                                       const Eigen::VectorXd& q, int frame) {
  detail::check_joint_vector(model, q, "q");
  const int n = model.n_joints();
  if (frame < 0 || frame > n) {
    throw DimensionError("frame: expected index in [0, " + std::to_string(n) +
                         "], got " + std::to_string(frame));
  }
  const detail::ChainFrames f = detail::chain_frames(model, q);
  const Eigen::Vector3d point = f.origin[frame];
  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, n);
  for (int i = 0; i < frame; ++i) {
    jac.col(i) = f.axis[i].cross(point - f.origin[i]);
  }
  return jac;
}

/// End-effector linear-velocity Jacobian: xdot = J qdot.
inline Eigen::Matrix3Xd jacobian(const RobotModel& model,
                                 const Eigen::VectorXd& q) {
  return point_jacobian(model, q, model.n_joints());
}

/// Joint torques realizing (q, qd, qdd) under the model's gravity, by the
/// recursive Newton-Euler algorithm over the serial chain.
///
/// Torques include the gravity load, so holding a pose statically costs
/// torque; zero the model's gravity to study motion-only torques. Each
/// link is a point mass at its COM plus inertia_zz about the world joint
/// axis through the COM.
inline Eigen::VectorXd inverse_dynamics(const RobotModel& model,
                                        const Eigen::VectorXd& q,
                                        const Eigen::VectorXd& qd,
                                        const Eigen::VectorXd& qdd) {
  detail::check_joint_vector(model, q, "q");
  detail::check_joint_vector(model, qd, "qd");
  detail::check_joint_vector(model, qdd, "qdd");
  const int n = model.n_joints();
  const detail::ChainFrames f = detail::chain_frames(model, q);

  // Outward pass: angular velocity/acceleration and COM accelerations.
  std::vector<Eigen::Vector3d> omega(n), alpha(n), accel_com(n);
  Eigen::Vector3d omega_prev = Eigen::Vector3d::Zero();
  Eigen::Vector3d alpha_prev = Eigen::Vector3d::Zero();
  Eigen::Vector3d accel_origin = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      const Eigen::Vector3d step = f.origin[i] - f.origin[i - 1];
      accel_origin += alpha_prev.cross(step) +
                      omega_prev.cross(omega_prev.cross(step));
    }
    const Eigen::Vector3d joint_rate = f.axis[i] * qd[i];
    omega[i] = omega_prev + joint_rate;
    alpha[i] = alpha_prev + f.axis[i] * qdd[i] + omega_prev.cross(joint_rate);
    const Eigen::Vector3d arm = f.com[i] - f.origin[i];
    accel_com[i] =
        accel_origin + alpha[i].cross(arm) + omega[i].cross(omega[i].cross(arm));
    omega_prev = omega[i];
    alpha_prev = alpha[i];
  }

  // Inward pass: joint interaction forces/moments, projected on the axes.
  Eigen::VectorXd tau(n);
  Eigen::Vector3d force_child = Eigen::Vector3d::Zero();
  Eigen::Vector3d moment_child = Eigen::Vector3d::Zero();
  for (int i = n - 1; i >= 0; --i) {
    const LinkSpec& link = model.links[i];
    const Eigen::Vector3d& z = f.axis[i];
    const Eigen::Vector3d net_force =
        link.mass * (accel_com[i] - model.gravity);
    // COM inertia tensor in world coordinates is inertia_zz * z z^T.
    const Eigen::Vector3d angular_momentum = link.inertia_zz * z.dot(omega[i]) * z;
    const Eigen::Vector3d net_moment =
        link.inertia_zz * z.dot(alpha[i]) * z +
        omega[i].cross(angular_momentum);
    const Eigen::Vector3d force = net_force + force_child;
    const Eigen::Vector3d moment =
        net_moment + moment_child +
        (f.com[i] - f.origin[i]).cross(net_force) +
        (f.origin[i + 1] - f.origin[i]).cross(force_child);
    tau[i] = z.dot(moment);
    force_child = force;
    moment_child = moment;
  }
  return tau;
}

/// Torques holding the pose statically: inverse_dynamics with qd = qdd = 0.
inline Eigen::VectorXd gravity_torque(const RobotModel& model,
                                      const Eigen::VectorXd& q) {
  detail::check_joint_vector(model, q, "q");
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(model.n_joints());
  return inverse_dynamics(model, q, zero, zero);
}

}  // namespace trajenergy
