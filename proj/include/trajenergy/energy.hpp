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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "trajenergy/errors.hpp"
#include "trajenergy/kinodynamics.hpp"
#include "trajenergy/robot_model.hpp"
#include "trajenergy/trajectory.hpp"

namespace trajenergy {

/// Parameters of the motion cost integral
///   cost = integral over [0, T] of sum_i (tau_i^2 + lambda * qdot_i^2).
///
/// The integrand mixes squared torque and squared velocity, so the result
/// is a cost proxy in "cost units", not physical joules. lambda defaults
/// to 0.1 as a configuration choice.
struct EnergyParams {
  double lambda = 0.1;  ///< velocity weight, >= 0
  double dt = 0.01;     ///< integration step [s]
};

/// Full decomposition of one cost evaluation.
struct EnergyBreakdown {
  double total = 0.0;          ///< torque_term + velocity_term
  double torque_term = 0.0;    ///< sum_i integral tau_i^2
  double velocity_term = 0.0;  ///< lambda * sum_i integral qdot_i^2
  Eigen::VectorXd per_joint;   ///< per-joint totals; sums to `total`
  std::vector<double> series;  ///< integrand sum_i(tau_i^2 + lambda qdot_i^2) per sample
};

/// Torque override for evaluating the cost with synthetic torques instead
/// of inverse dynamics (test seam; also used for velocity-term-only runs).
using TorqueProvider =
    std::function<Eigen::VectorXd(double t, const TrajectorySample& state)>;

/// Sampling grid 0, dt, 2 dt, ... with the final point snapped (or
/// appended) so the grid always ends exactly at `duration`.
inline std::vector<double> sample_times(double duration, double dt) {
  if (!(duration > 0.0) || !(dt > 0.0)) {
    throw DegenerateInterval("sample_times: duration and dt must be > 0");
  }
  const auto steps =
      static_cast<std::size_t>(std::floor(duration / dt * (1.0 + 1e-12)));
  std::vector<double> times;
  times.reserve(steps + 2);
  for (std::size_t k = 0; k <= steps; ++k) {
    times.push_back(static_cast<double>(k) * dt);
  }
  const double tol = 1e-9 * std::max(1.0, duration);
  if (std::abs(times.back() - duration) <= tol) {
    times.back() = duration;
  } else {
    times.push_back(duration);
  }
  return times;
}

/// Composite trapezoid over an arbitrary (increasing) grid.
inline double trapezoid(const std::vector<double>& values,
                        const std::vector<double>& times) {
  if (values.size() != times.size()) {
    throw LengthMismatch("trapezoid: values and times differ in length");
  }
  if (values.size() < 2) {
    throw TooFewSamples("trapezoid: need at least 2 samples");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    sum += 0.5 * (values[k] + values[k + 1]) * (times[k + 1] - times[k]);
  }
  return sum;
}

/// Composite trapezoid over a uniform grid of step dt. Exact for affine
/// integrands; second-order convergent for smooth ones.
inline double integrate_series(const std::vector<double>& values, double dt) {
  if (values.size() < 2) {
    throw TooFewSamples("integrate_series: need at least 2 samples");
  }
  if (!(dt > 0.0)) {
    throw DegenerateInterval("integrate_series: dt must be > 0");
  }
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) interior += values[k];
  return dt * (0.5 * (values.front() + values.back()) + interior);
}

/// Running trapezoid integral; element k covers [times[0], times[k]].
inline std::vector<double> cumulative_trapezoid(
    const std::vector<double>& values, const std::vector<double>& times) {
  if (values.size() != times.size()) {
    throw LengthMismatch("cumulative_trapezoid: values and times differ in length");
  }
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t k = 1; k < values.size(); ++k) {
    out[k] = out[k - 1] +
             0.5 * (values[k] + values[k - 1]) * (times[k] - times[k - 1]);
  }
  return out;
}

/// Integrates the cost over the trajectory with torques from
/// inverse_dynamics at every sample (or from `torque_override` when given).
/// Quadrature is the composite trapezoid on the sample_times grid of
/// params.dt.
inline EnergyBreakdown energy_cost(const RobotModel& model,
                                   const Trajectory& traj,
                                   const EnergyParams& params,
                                   const TorqueProvider& torque_override = {}) {
  if (traj.dofs() != model.n_joints()) {
    throw DimensionError("energy_cost: trajectory has " +
                         std::to_string(traj.dofs()) + " joints, model has " +
                         std::to_string(model.n_joints()));
  }
  if (params.lambda < 0.0) {
    throw ValidationError("lambda: must be >= 0");
  }
  const int n = model.n_joints();
  const std::vector<double> times = sample_times(traj.duration(), params.dt);
  const std::size_t count = times.size();

  std::vector<std::vector<double>> torque_sq(n, std::vector<double>(count));
  std::vector<std::vector<double>> vel_sq(n, std::vector<double>(count));
  EnergyBreakdown out;
  out.series.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const TrajectorySample state = traj.eval(times[k]);
    const Eigen::VectorXd tau =
        torque_override ? torque_override(times[k], state)
                        : inverse_dynamics(model, state.q, state.qd, state.qdd);
    if (tau.size() != n) {
      throw DimensionError("energy_cost: torque provider returned " +
                           std::to_string(tau.size()) + " entries, expected " +
                           std::to_string(n));
    }
    double instant = 0.0;
    for (int j = 0; j < n; ++j) {
      torque_sq[j][k] = tau[j] * tau[j];
      vel_sq[j][k] = state.qd[j] * state.qd[j];
      instant += torque_sq[j][k] + params.lambda * vel_sq[j][k];
    }
    out.series[k] = instant;
  }

  out.per_joint = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double tq = trapezoid(torque_sq[j], times);
    const double vq = trapezoid(vel_sq[j], times);
    out.torque_term += tq;
    out.velocity_term += params.lambda * vq;
    out.per_joint[j] = tq + params.lambda * vq;
  }
  out.total = out.per_joint.sum();
  return out;
}

/// One row of a cost comparison, deltas taken against the cheapest entry.
struct RankedEnergy {
  std::string name;
  EnergyBreakdown breakdown;
  double total_delta = 0.0;
  double torque_delta = 0.0;
  double velocity_delta = 0.0;
};

/// Evaluates every named trajectory and ranks them ascending by total cost.
/// Ties keep their input order.
inline std::vector<RankedEnergy> compare_energy(
    const RobotModel& model,
    const std::vector<std::pair<std::string, Trajectory>>& trajectories,
    const EnergyParams& params, const TorqueProvider& torque_override = {}) {
  if (trajectories.size() < 2) {
    throw TooFewTrajectories("compare_energy: need at least 2 trajectories");
  }
  std::vector<RankedEnergy> rows;
  rows.reserve(trajectories.size());
  for (const auto& [name, traj] : trajectories) {
    RankedEnergy row;
    row.name = name;
    row.breakdown = energy_cost(model, traj, params, torque_override);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RankedEnergy& a, const RankedEnergy& b) {
                     return a.breakdown.total < b.breakdown.total;
                   });
  const EnergyBreakdown& best = rows.front().breakdown;
  for (RankedEnergy& row : rows) {
    row.total_delta = row.breakdown.total - best.total;
    row.torque_delta = row.breakdown.torque_term - best.torque_term;
    row.velocity_delta = row.breakdown.velocity_term - best.velocity_term;
  }
  return rows;
}

}  // namespace trajenergy
