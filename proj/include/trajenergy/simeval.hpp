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

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trajenergy/energy.hpp"
#include "trajenergy/errors.hpp"
#include "trajenergy/kinodynamics.hpp"
#include "trajenergy/robot_model.hpp"
#include "trajenergy/trajectory.hpp"

namespace trajenergy {

/// Per-timestep evaluation series of one replayed trajectory.
struct MetricsReport {
  std::vector<double> time;                ///< [s]
  std::vector<double> power_series;        ///< sum_i (tau_i^2 + lambda qdot_i^2)
  std::vector<double> accel_norm;          ///< ||qddot||
  std::vector<double> cumulative_energy;   ///< running integral of power_series
  std::vector<double> velocity_magnitude;  ///< ||qdot||
  double tracking_rms = 0.0;               ///< [rad]
  double smoothness_msj = 0.0;             ///< mean squared jerk [rad^2/s^6]
};

/// Mean squared jerk of the sampled motion; jerk comes from central finite
/// differences of the analytic accelerations. Zero for constant-velocity
/// and stationary motions. `dt` defaults to the trajectory's own step.
inline double smoothness(const Trajectory& traj, double dt = 0.0) {
  const double step = dt > 0.0 ? dt : traj.dt();
  const std::vector<double> times = sample_times(traj.duration(), step);
  if (times.size() < 4) {
    throw TooFewSamples("smoothness: need at least 4 samples");
  }
  std::vector<Eigen::VectorXd> accel;
  accel.reserve(times.size());
  for (double t : times) accel.push_back(traj.eval(t).qdd);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    const Eigen::VectorXd jerk =
        (accel[k + 1] - accel[k - 1]) / (times[k + 1] - times[k - 1]);
    sum += jerk.squaredNorm();
    count += jerk.size();
  }
  return sum / static_cast<double>(count);
}

/// Deterministic perfect-tracking replay: samples the trajectory at
/// params.dt, computes torques by inverse dynamics at every sample, and
/// fills all metric series. The final cumulative_energy sample equals
/// energy_cost(...).total (same grid, same quadrature). tracking_rms is 0
/// by construction; compare variants with tracking_error().
inline MetricsReport replay(const RobotModel& model, const Trajectory& traj,
                            const EnergyParams& params) {
  if (traj.dofs() != model.n_joints()) {
    throw DimensionError("replay: trajectory has " +
                         std::to_string(traj.dofs()) + " joints, model has " +
                         std::to_string(model.n_joints()));
  }
  MetricsReport report;
  report.time = sample_times(traj.duration(), params.dt);
  const std::size_t count = report.time.size();
  report.power_series.resize(count);
  report.accel_norm.resize(count);
  report.velocity_magnitude.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const TrajectorySample state = traj.eval(report.time[k]);
    const Eigen::VectorXd tau =
        inverse_dynamics(model, state.q, state.qd, state.qdd);
    report.power_series[k] =
        tau.squaredNorm() + params.lambda * state.qd.squaredNorm();
    report.accel_norm[k] = state.qdd.norm();
    report.velocity_magnitude[k] = state.qd.norm();
  }
  report.cumulative_energy =
      cumulative_trapezoid(report.power_series, report.time);
  report.tracking_rms = 0.0;
  report.smoothness_msj = smoothness(traj, params.dt);
  return report;
}

/// Root-mean-square joint error between the planned trajectory (sampled at
/// dt) and an executed sample series of the same length.
inline double tracking_error(const Trajectory& planned,
                             const std::vector<Eigen::VectorXd>& executed,
                             double dt) {
  const std::vector<double> times = sample_times(planned.duration(), dt);
  if (executed.size() != times.size()) {
    throw LengthMismatch("tracking_error: expected " +
                         std::to_string(times.size()) + " samples, got " +
                         std::to_string(executed.size()));
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Eigen::VectorXd planned_q = planned.eval(times[k]).q;
    if (executed[k].size() != planned_q.size()) {
      throw LengthMismatch("tracking_error: executed sample " +
                           std::to_string(k) + " has wrong joint count");
    }
    sum += (executed[k] - planned_q).squaredNorm();
    count += planned_q.size();
  }
  return std::sqrt(sum / static_cast<double>(count));
}

/// Dominant period of a sampled series, in seconds, from the lag of the
/// strongest non-zero-lag autocorrelation.
///
/// The per-lag statistic is the Pearson correlation of the series with its
/// shifted self (window-local means and variances), which is exactly 1 at
/// the true period of a periodic series. Lags are capped at half the
/// series length so every estimate keeps at least half the samples; the
/// two-period precondition on the input keeps the true period inside that
/// range. Lags before the first nonpositive correlation are skipped so
/// short-lag self-similarity of smooth series cannot win, and among
/// near-equal peaks (period multiples correlate equally well) the smallest
/// lag is returned. `expected_period` is only used to require the series
/// to span at least two periods.
inline double periodicity_check(const std::vector<double>& series,
                                double expected_period, double dt) {
  if (!(dt > 0.0) || !(expected_period > 0.0)) {
    throw DegenerateInterval("periodicity_check: dt and expected_period must be > 0");
  }
  const std::size_t n = series.size();
  if (n < 8 ||
      static_cast<double>(n) * dt < 2.0 * expected_period - 1e-12) {
    throw SeriesTooShort("periodicity_check: series spans less than 2 periods");
  }
  double scale = 0.0, low = series.front(), high = series.front();
  for (double v : series) {
    scale = std::max(scale, std::abs(v));
    low = std::min(low, v);
    high = std::max(high, v);
  }
  if (high - low <= 1e-12 * std::max(1.0, scale)) {
    throw FlatSeries("periodicity_check: series has no oscillation");
  }

  // Prefix sums give O(1) window means/variances per lag.
  std::vector<double> sum(n + 1, 0.0), sum_sq(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    sum[k + 1] = sum[k] + series[k];
    sum_sq[k + 1] = sum_sq[k] + series[k] * series[k];
  }

  const std::size_t max_lag = n / 2;
  std::vector<double> corr(max_lag + 1, 0.0);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    const std::size_t overlap = n - lag;
    const double count = static_cast<double>(overlap);
    const double mean_head = sum[overlap] / count;
    const double mean_tail = (sum[n] - sum[lag]) / count;
    double cross = 0.0;
    for (std::size_t k = 0; k < overlap; ++k) {
      cross += series[k] * series[k + lag];
    }
    const double cov = cross - count * mean_head * mean_tail;
    const double var_head = sum_sq[overlap] - count * mean_head * mean_head;
    const double var_tail =
        (sum_sq[n] - sum_sq[lag]) - count * mean_tail * mean_tail;
    const double denom = std::sqrt(std::max(var_head, 0.0)) *
                         std::sqrt(std::max(var_tail, 0.0));
    corr[lag] = denom > 0.0 ? cov / denom : 0.0;
  }

  std::size_t start = 1;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    if (corr[lag] <= 0.0) {
      start = lag;
      break;
    }
  }
  double best_corr = -1.0;
  for (std::size_t lag = start; lag <= max_lag; ++lag) {
    best_corr = std::max(best_corr, corr[lag]);
  }
  if (best_corr <= 0.0) {
    throw FlatSeries("periodicity_check: no positive correlation peak");
  }
  const double threshold = best_corr - 1e-3 * std::abs(best_corr);
  for (std::size_t lag = start; lag <= max_lag; ++lag) {
    if (corr[lag] >= threshold) {
      return static_cast<double>(lag) * dt;
    }
  }
  return static_cast<double>(max_lag) * dt;  // unreachable
}

}  // namespace trajenergy
