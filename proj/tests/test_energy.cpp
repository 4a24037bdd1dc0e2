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

#include "trajenergy/energy.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "trajenergy/trajectory.hpp"

namespace {

using namespace trajenergy;

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd out(1);
  out << v;
  return out;
}

RobotModel one_joint_model(const Eigen::Vector3d& gravity = {0, 0, 0}) {
  std::vector<LinkSpec> links(1);
  links[0].length = 1.0;
  links[0].mass = 1.0;
  links[0].com_offset = 0.5;
  links[0].inertia_zz = 0.05;
  links[0].axis = Eigen::Vector3d::UnitZ();
  return make_robot(std::move(links), {{-10.0, 10.0, 10.0, 100.0}}, gravity);
}

Trajectory stationary(double duration, double dt) {
  return Trajectory::from_segments(
      {fit_cubic(scalar(0.4), scalar(0), scalar(0.4), scalar(0), 0.0,
                 duration)},
      dt);
}

TorqueProvider synthetic_tau(double (*f)(double)) {
  return [f](double t, const TrajectorySample&) {
    Eigen::VectorXd tau(1);
    tau << f(t);
    return tau;
  };
}

TEST(EnergyCost, StationaryZeroGravityCostsNothing) {
  const RobotModel model = one_joint_model();
  const EnergyBreakdown bd =
      energy_cost(model, stationary(2.0, 0.01), EnergyParams{0.5, 0.01});
  EXPECT_DOUBLE_EQ(bd.total, 0.0);
  EXPECT_DOUBLE_EQ(bd.torque_term, 0.0);
  EXPECT_DOUBLE_EQ(bd.velocity_term, 0.0);
}

TEST(EnergyCost, ConstantSyntheticTorqueIntegratesExactly) {
  const RobotModel model = one_joint_model();
  const EnergyBreakdown bd =
      energy_cost(model, stationary(2.0, 0.01), EnergyParams{0.0, 0.01},
                  synthetic_tau(+[](double) { return 1.0; }));
  EXPECT_NEAR(bd.total, 2.0, 1e-12);
}

TEST(EnergyCost, HandTrapezoidOfRampTorque) {
  const RobotModel model = one_joint_model();
  const EnergyBreakdown bd =
      energy_cost(model, stationary(1.0, 0.5), EnergyParams{0.0, 0.5},
                  synthetic_tau(+[](double t) { return t; }));
  EXPECT_DOUBLE_EQ(bd.total, 0.375);  // vs exact 1/3
}

TEST(EnergyCost, QuadratureErrorFallsSecondOrder) {
  const RobotModel model = one_joint_model();
  const Trajectory traj = stationary(1.0, 0.01);
  const auto error_at = [&](double dt) {
    const EnergyBreakdown bd =
        energy_cost(model, traj, EnergyParams{0.0, dt},
                    synthetic_tau(+[](double t) { return t; }));
    return std::abs(bd.total - 1.0 / 3.0);
  };
  const double ratio1 = error_at(0.5) / error_at(0.25);
  const double ratio2 = error_at(0.25) / error_at(0.125);
  EXPECT_GE(ratio1, 3.5);
  EXPECT_LE(ratio1, 4.5);
  EXPECT_GE(ratio2, 3.5);
  EXPECT_LE(ratio2, 4.5);
}

TEST(EnergyCost, StrictlyIncreasingInLambda) {
  const RobotModel model = one_joint_model();
  const Trajectory traj =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  double previous = -1.0;
  for (double lambda : {0.0, 0.05, 0.2, 1.0}) {
    const double total =
        energy_cost(model, traj, EnergyParams{lambda, 0.01}).total;
    EXPECT_GT(total, previous);
    previous = total;
  }
}

TEST(EnergyCost, WindowedCostsAddUp) {
  const RobotModel model = one_joint_model();
  const Trajectory traj =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  const EnergyParams params{0.3, 0.01};
  const EnergyBreakdown bd = energy_cost(model, traj, params);
  const std::size_t half = (bd.series.size() - 1) / 2;
  const std::vector<double> first(bd.series.begin(),
                                  bd.series.begin() + half + 1);
  const std::vector<double> second(bd.series.begin() + half, bd.series.end());
  const double split_sum = integrate_series(first, params.dt) +
                           integrate_series(second, params.dt);
  EXPECT_NEAR(split_sum, bd.total, 1e-6);
}

TEST(EnergyCost, BreakdownInvariantsHold) {
  const RobotModel model = default_seven_dof();
  SinusoidalProfile profile;
  profile.q_start = Eigen::VectorXd::Zero(7);
  profile.q_end = Eigen::VectorXd::Constant(7, 0.6);
  profile.duration = 2.0;
  const EnergyBreakdown bd = energy_cost(model, sinusoidal(profile, 0.01),
                                         EnergyParams{0.25, 0.01});
  EXPECT_NEAR(bd.total, bd.torque_term + bd.velocity_term, 1e-9);
  EXPECT_NEAR(bd.total, bd.per_joint.sum(), 1e-9);
  EXPECT_GE(bd.torque_term, 0.0);
  EXPECT_GE(bd.velocity_term, 0.0);
  EXPECT_GE(bd.per_joint.minCoeff(), 0.0);
  for (double v : bd.series) EXPECT_GE(v, 0.0);
}

TEST(EnergyCost, TimeDilationScalesVelocityTermInversely) {
  const RobotModel model = one_joint_model();
  const Trajectory traj =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  const TorqueProvider zero_tau = [](double, const TrajectorySample& s) {
    return Eigen::VectorXd::Zero(s.q.size());
  };
  const EnergyParams params{1.0, 0.01};
  const double base =
      energy_cost(model, traj, params, zero_tau).velocity_term;
  for (double alpha : {2.0, 3.0}) {
    const double dilated =
        energy_cost(model, traj.time_dilated(alpha), params, zero_tau)
            .velocity_term;
    EXPECT_NEAR(dilated / base, 1.0 / alpha, 1e-6);
  }
}

TEST(EnergyCost, MismatchedTrajectoryRejected) {
  const RobotModel model = one_joint_model();
  SinusoidalProfile profile;
  profile.q_start = Eigen::VectorXd::Zero(2);
  profile.q_end = Eigen::VectorXd::Ones(2);
  profile.duration = 1.0;
  EXPECT_THROW(
      energy_cost(model, sinusoidal(profile, 0.01), EnergyParams{0.1, 0.01}),
      DimensionError);
}

TEST(IntegrateSeries, ConstantIsWidthTimesHeight) {
  EXPECT_DOUBLE_EQ(integrate_series(std::vector<double>(10, 1.0), 1.0), 9.0);
}

TEST(IntegrateSeries, ExactOnAffineRamp) {
  std::vector<double> ramp(11);
  for (int k = 0; k <= 10; ++k) ramp[k] = 0.1 * k;
  EXPECT_NEAR(integrate_series(ramp, 0.1), 0.5, 1e-15);
}

TEST(IntegrateSeries, HandComputedSquares) {
  EXPECT_DOUBLE_EQ(integrate_series({0.0, 0.25, 1.0}, 0.5), 0.375);
}

TEST(IntegrateSeries, TooFewSamplesThrows) {
  EXPECT_THROW(integrate_series({1.0}, 0.1), TooFewSamples);
}

TEST(CompareEnergy, ScaledSinusoidRanksFirstWithHalvedVelocityTerm) {
  const RobotModel model = one_joint_model();
  const Trajectory traj =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  const ScaleResult scaled =
      scale_velocity(traj, scalar(std::numbers::pi / 8.0), scalar(100.0));
  ASSERT_DOUBLE_EQ(scaled.alpha, 2.0);
  const TorqueProvider zero_tau = [](double, const TrajectorySample& s) {
    return Eigen::VectorXd::Zero(s.q.size());
  };
  const auto rows = compare_energy(
      model, {{"unscaled", traj}, {"scaled", scaled.trajectory}},
      EnergyParams{1.0, 0.01}, zero_tau);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].name, "scaled");
  EXPECT_NEAR(rows[0].breakdown.velocity_term /
                  rows[1].breakdown.velocity_term,
              0.5, 1e-9);
  EXPECT_DOUBLE_EQ(rows[0].total_delta, 0.0);
  EXPECT_GT(rows[1].total_delta, 0.0);
}

TEST(CompareEnergy, TiesKeepInputOrder) {
  const RobotModel model = one_joint_model();
  const Trajectory traj =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  const auto rows =
      compare_energy(model, {{"first", traj}, {"second", traj}},
                     EnergyParams{0.1, 0.01});
  EXPECT_EQ(rows[0].name, "first");
  EXPECT_EQ(rows[1].name, "second");
  EXPECT_DOUBLE_EQ(rows[0].breakdown.total, rows[1].breakdown.total);
}

TEST(CompareEnergy, SingleTrajectoryRejected) {
  const RobotModel model = one_joint_model();
  const Trajectory traj =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  EXPECT_THROW(
      compare_energy(model, {{"only", traj}}, EnergyParams{0.1, 0.01}),
      TooFewTrajectories);
}

TEST(CompareEnergy, DimensionMismatchRejected) {
  const RobotModel model = one_joint_model();
  SinusoidalProfile wide;
  wide.q_start = Eigen::VectorXd::Zero(2);
  wide.q_end = Eigen::VectorXd::Ones(2);
  wide.duration = 1.0;
  const Trajectory good =
      sinusoidal(SinusoidalProfile{scalar(0), scalar(1), 2.0}, 0.01);
  EXPECT_THROW(compare_energy(model,
                              {{"good", good}, {"bad", sinusoidal(wide, 0.01)}},
                              EnergyParams{0.1, 0.01}),
               DimensionError);
}

}  // namespace
