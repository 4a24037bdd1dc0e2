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

#include "trajenergy/kinodynamics.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "trajenergy/trajectory.hpp"

namespace {

using namespace trajenergy;

RobotModel planar_arm(int n, const Eigen::Vector3d& gravity) {
  std::vector<LinkSpec> links(n);
  for (LinkSpec& link : links) {
    link.length = 1.0;
    link.mass = 1.0;
    link.com_offset = 0.5;
    link.inertia_zz = 0.05;
    link.axis = Eigen::Vector3d::UnitZ();
  }
  std::vector<JointLimits> limits(n, {-10.0, 10.0, 10.0, 100.0});
  return make_robot(std::move(links), std::move(limits), gravity);
}

RobotModel pendulum_model() {
  // Rotation about +y with gravity along -z puts the full m g l moment on
  // the joint when the link lies along +x.
  std::vector<LinkSpec> links(1);
  links[0].length = 1.0;
  links[0].mass = 1.0;
  links[0].com_offset = 1.0;
  links[0].inertia_zz = 0.0;
  links[0].axis = Eigen::Vector3d::UnitY();
  return make_robot(std::move(links), {{-4.0, 4.0, 10.0, 100.0}},
                    {0.0, 0.0, -9.81});
}

TEST(ForwardKinematics, StraightChainReachesSumOfLengths) {
  const RobotModel arm = planar_arm(2, {0.0, 0.0, 0.0});
  const auto poses = forward_kinematics(arm, Eigen::Vector2d::Zero());
  ASSERT_EQ(poses.size(), 3u);
  EXPECT_NEAR((poses.back().position - Eigen::Vector3d(2, 0, 0)).norm(), 0.0,
              1e-15);
}

TEST(ForwardKinematics, RigidRotationOfBaseJoint) {
  const RobotModel arm = planar_arm(2, {0.0, 0.0, 0.0});
  Eigen::Vector2d q(M_PI / 2.0, 0.0);
  const auto poses = forward_kinematics(arm, q);
  EXPECT_NEAR((poses.back().position - Eigen::Vector3d(0, 2, 0)).norm(), 0.0,
              1e-12);
}

TEST(ForwardKinematics, BundledSevenDofAtZero) {
  const auto poses =
      forward_kinematics(default_seven_dof(), Eigen::VectorXd::Zero(7));
  ASSERT_EQ(poses.size(), 8u);
  EXPECT_NEAR((poses.back().position - Eigen::Vector3d(2.1, 0, 0)).norm(), 0.0,
              1e-12);
}

TEST(ForwardKinematics, OrientationsStayOrthonormal) {
  const RobotModel model = default_seven_dof();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd q = oracles::random_vector(rng, 7, -3.0, 3.0);
    for (const FramePose& pose : forward_kinematics(model, q)) {
      const Eigen::Matrix3d should_be_identity =
          pose.orientation.transpose() * pose.orientation -
          Eigen::Matrix3d::Identity();
      EXPECT_LT(should_be_identity.cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_NEAR(pose.orientation.determinant(), 1.0, 1e-9);
    }
  }
}

TEST(ForwardKinematics, WrongDimensionThrows) {
  const RobotModel arm = planar_arm(2, {0.0, 0.0, 0.0});
  EXPECT_THROW(forward_kinematics(arm, Eigen::Vector3d::Zero()),
               DimensionError);
}

TEST(Jacobian, SingleLinkTangentialColumn) {
  const RobotModel arm = planar_arm(1, {0.0, 0.0, 0.0});
  const Eigen::Matrix3Xd jac = jacobian(arm, Eigen::VectorXd::Zero(1));
  EXPECT_NEAR((jac.col(0) - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-15);
}

TEST(Jacobian, ZeroJointVelocityMapsToZero) {
  const RobotModel model = default_seven_dof();
  std::mt19937 rng(5);
  const Eigen::VectorXd q = oracles::random_vector(rng, 7, -2.0, 2.0);
  EXPECT_DOUBLE_EQ(
      (jacobian(model, q) * Eigen::VectorXd::Zero(7)).norm(), 0.0);
}

TEST(Jacobian, MatchesCentralFiniteDifferences) {
  const RobotModel arm = planar_arm(2, {0.0, -9.81, 0.0});
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd q = oracles::random_vector(rng, 2, -3.0, 3.0);
    const Eigen::Matrix3Xd analytic = jacobian(arm, q);
    const Eigen::Matrix3Xd numeric = oracles::finite_difference_jacobian(arm, q);
    EXPECT_LT((analytic - numeric).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Jacobian, PointJacobianOfBaseFrameIsZero) {
  const RobotModel arm = planar_arm(2, {0.0, 0.0, 0.0});
  std::mt19937 rng(23);
  const Eigen::VectorXd q = oracles::random_vector(rng, 2, -3.0, 3.0);
  EXPECT_DOUBLE_EQ(point_jacobian(arm, q, 0).norm(), 0.0);
}

TEST(InverseDynamics, ZeroGravityStaticsHasZeroTorque) {
  const RobotModel arm = planar_arm(3, {0.0, 0.0, 0.0});
  std::mt19937 rng(29);
  const Eigen::VectorXd q = oracles::random_vector(rng, 3, -3.0, 3.0);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  EXPECT_LT(inverse_dynamics(arm, q, zero, zero).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(InverseDynamics, StaticPendulumCarriesFullGravityMoment) {
  const RobotModel pendulum = pendulum_model();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  const Eigen::VectorXd tau = inverse_dynamics(pendulum, zero, zero, zero);
  EXPECT_NEAR(std::abs(tau[0]), 9.81, 1e-9);
}

TEST(InverseDynamics, MatchesTwoLinkClosedForm) {
  oracles::TwoLinkParams p;
  p.m1 = 1.4;
  p.m2 = 0.9;
  p.l1 = 0.8;
  p.l2 = 0.6;
  p.lc1 = 0.35;
  p.lc2 = 0.25;
  p.I1 = 0.06;
  p.I2 = 0.025;
  const RobotModel arm = oracles::two_link_model(p);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Vector2d q = oracles::random_vector(rng, 2, -3.0, 3.0);
    const Eigen::Vector2d qd = oracles::random_vector(rng, 2, -2.0, 2.0);
    const Eigen::Vector2d qdd = oracles::random_vector(rng, 2, -5.0, 5.0);
    const Eigen::Vector2d expected = oracles::two_link_tau(p, q, qd, qdd);
    const Eigen::VectorXd actual = inverse_dynamics(arm, q, qd, qdd);
    EXPECT_LT((actual - expected).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(InverseDynamics, LinearInAcceleration) {
  const RobotModel arm = planar_arm(3, {0.0, -9.81, 0.0});
  std::mt19937 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd q = oracles::random_vector(rng, 3, -3.0, 3.0);
    const Eigen::VectorXd qd = oracles::random_vector(rng, 3, -2.0, 2.0);
    const Eigen::VectorXd qdd1 = oracles::random_vector(rng, 3, -4.0, 4.0);
    const Eigen::VectorXd qdd2 = oracles::random_vector(rng, 3, -4.0, 4.0);
    const double a = 0.7, b = -1.3;
    const Eigen::VectorXd combined =
        inverse_dynamics(arm, q, qd, a * qdd1 + b * qdd2);
    const Eigen::VectorXd recomposed =
        a * inverse_dynamics(arm, q, qd, qdd1) +
        b * inverse_dynamics(arm, q, qd, qdd2) -
        (a + b - 1.0) *
            inverse_dynamics(arm, q, qd, Eigen::VectorXd::Zero(3));
    EXPECT_LT((combined - recomposed).cwiseAbs().maxCoeff(), 1e-9);
  }
}

// tau^T qd must equal the kinetic-energy rate when gravity is off.
TEST(InverseDynamics, PowerBalancesKineticEnergyRate) {
  const RobotModel arm = planar_arm(2, {0.0, 0.0, 0.0});
  Eigen::VectorXd qa(2), qb(2);
  qa << 0.3, -0.8;
  qb << 1.4, 0.9;
  const Trajectory traj = spline_through_waypoints(
      {{0.0, qa}, {1.0, qb}}, 0.01);

  const auto kinetic_energy = [&](double t) {
    const TrajectorySample s = traj.eval(t);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    Eigen::Matrix2d mass_matrix;
    for (int j = 0; j < 2; ++j) {
      mass_matrix.col(j) =
          inverse_dynamics(arm, s.q, zero, Eigen::Vector2d::Unit(j));
    }
    return 0.5 * s.qd.dot(mass_matrix * s.qd);
  };

  const double h = 1e-4;
  for (double t : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const TrajectorySample s = traj.eval(t);
    const double power = inverse_dynamics(arm, s.q, s.qd, s.qdd).dot(s.qd);
    const double ke_rate = (kinetic_energy(t + h) - kinetic_energy(t - h)) / (2.0 * h);
    EXPECT_NEAR(power, ke_rate, 1e-4);
  }
}

TEST(GravityTorque, MatchesInverseDynamicsDefinition) {
  const RobotModel arm = planar_arm(3, {0.0, -9.81, 0.0});
  std::mt19937 rng(41);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd q = oracles::random_vector(rng, 3, -3.0, 3.0);
    EXPECT_EQ((gravity_torque(arm, q) - inverse_dynamics(arm, q, zero, zero))
                  .cwiseAbs()
                  .maxCoeff(),
              0.0);
  }
}

TEST(GravityTorque, ZeroGravityGivesZeroVector) {
  const RobotModel arm = planar_arm(4, {0.0, 0.0, 0.0});
  std::mt19937 rng(43);
  const Eigen::VectorXd q = oracles::random_vector(rng, 4, -3.0, 3.0);
  EXPECT_LT(gravity_torque(arm, q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GravityTorque, PendulumMaximalMoment) {
  EXPECT_NEAR(
      std::abs(gravity_torque(pendulum_model(), Eigen::VectorXd::Zero(1))[0]),
      9.81, 1e-9);
}

TEST(InverseDynamics, RejectsNonFiniteInput) {
  const RobotModel arm = planar_arm(2, {0.0, 0.0, 0.0});
  Eigen::VectorXd bad(2);
  bad << 0.0, std::numeric_limits<double>::quiet_NaN();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  EXPECT_THROW(inverse_dynamics(arm, bad, zero, zero), DimensionError);
}

}  // namespace
