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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "trajenergy/errors.hpp"
#include "trajenergy/robot_model.hpp"

namespace trajenergy {

/// Joint position/velocity/acceleration at one instant.
struct TrajectorySample {
  Eigen::VectorXd q;
  Eigen::VectorXd qd;
  Eigen::VectorXd qdd;
};

/// One polynomial piece per joint, q(t) = a + b s + c s^2 + d s^3 with
/// local time s = t - t0. Local time keeps the coefficients well
/// conditioned for segments far from t = 0.
struct CubicSegment {
  Eigen::VectorXd a, b, c, d;
  double t0 = 0.0;
  double tf = 0.0;

  int dofs() const { return static_cast<int>(a.size()); }
  double width() const { return tf - t0; }

  TrajectorySample eval(double t) const {
    const double s = t - t0;
    TrajectorySample out;
    out.q = a + s * b + (s * s) * c + (s * s * s) * d;
    out.qd = b + (2.0 * s) * c + (3.0 * s * s) * d;
    out.qdd = 2.0 * c + (6.0 * s) * d;
    return out;
  }
};

/// Rest-to-rest point-to-point move over `duration` seconds.
struct SinusoidalProfile {
  Eigen::VectorXd q_start;
  Eigen::VectorXd q_end;
  double duration = 0.0;
};

/// Solves the per-joint boundary-condition system q(t0) = q0, qdot(t0) = v0,
/// q(tf) = qf, qdot(tf) = vf. Exact in all four conditions.
inline CubicSegment fit_cubic(const Eigen::VectorXd& q0,
                              const Eigen::VectorXd& v0,
                              const Eigen::VectorXd& qf,
                              const Eigen::VectorXd& vf, double t0,
                              double tf) {
  if (!(tf > t0)) {
    throw DegenerateInterval("fit_cubic: tf must exceed t0");
  }
  const auto n = q0.size();
  if (v0.size() != n || qf.size() != n || vf.size() != n) {
    throw DimensionError("fit_cubic: boundary vectors disagree in size");
  }
  const double width = tf - t0;
  CubicSegment seg;
  seg.t0 = t0;
  seg.tf = tf;
  seg.a = q0;
  seg.b = v0;
  seg.c = (3.0 * (qf - q0) - (2.0 * v0 + vf) * width) / (width * width);
  seg.d = (-2.0 * (qf - q0) + (v0 + vf) * width) / (width * width * width);
  return seg;
}

/// Piecewise-cubic or sinusoidal joint-space motion over [0, duration],
/// carrying a default sampling step dt. Immutable after construction.
class Trajectory {
 public:
  Trajectory() = default;

  /// Wraps contiguous segments. Times are shifted so motion starts at 0.
  /// Validates contiguity and position/velocity continuity at the knots
  /// (tolerance 1e-9).
  static Trajectory from_segments(std::vector<CubicSegment> segments,
                                  double dt) {
    if (segments.empty()) {
      throw ValidationError("segments: expected at least one segment");
    }
    const double shift = segments.front().t0;
    for (CubicSegment& seg : segments) {
      seg.t0 -= shift;
      seg.tf -= shift;
      if (!(seg.tf > seg.t0)) {
        throw DegenerateInterval("segments: tf must exceed t0");
      }
      if (!seg.a.allFinite() || !seg.b.allFinite() || !seg.c.allFinite() ||
          !seg.d.allFinite()) {
        throw ValidationError("segments: coefficients must be finite");
      }
    }
    const int dofs = segments.front().dofs();
    for (std::size_t k = 0; k + 1 < segments.size(); ++k) {
      CubicSegment& cur = segments[k];
      CubicSegment& next = segments[k + 1];
      if (next.dofs() != dofs) {
        throw DimensionError("segments: joint count changes between segments");
      }
      if (std::abs(next.t0 - cur.tf) > 1e-9) {
        throw ValidationError("segments: segments are not contiguous in time");
      }
      next.t0 = cur.tf;  // snap away representation noise
      const TrajectorySample end = cur.eval(cur.tf);
      const TrajectorySample start = next.eval(next.t0);
      if ((end.q - start.q).cwiseAbs().maxCoeff() > 1e-9 ||
          (end.qd - start.qd).cwiseAbs().maxCoeff() > 1e-9) {
        throw ValidationError(
            "segments: position/velocity discontinuity at a knot");
      }
    }
    Trajectory traj;
    traj.duration_ = segments.back().tf;
    traj.segments_ = std::move(segments);
    traj.set_dt(dt);
    return traj;
  }

  /// Wraps a raised-cosine profile evaluated analytically:
  ///   q(t) = q_start + (q_end - q_start) (1 - cos(pi t / T)) / 2.
  /// Velocity is sinusoidal with zero endpoints and peak per-joint speed
  /// pi |dq| / (2T) at t = T/2.
  static Trajectory from_profile(SinusoidalProfile profile, double dt) {
    if (!(profile.duration > 0.0)) {
      throw DegenerateInterval("sinusoidal: duration must be > 0");
    }
    if (profile.q_end.size() != profile.q_start.size()) {
      throw DimensionError("sinusoidal: q_start/q_end disagree in size");
    }
    Trajectory traj;
    traj.duration_ = profile.duration;
    traj.profile_ = std::move(profile);
    traj.set_dt(dt);
    return traj;
  }

  bool empty() const { return segments_.empty() && !profile_.has_value(); }
  double duration() const { return duration_; }
  double dt() const { return dt_; }

  int dofs() const {
    if (profile_) return static_cast<int>(profile_->q_start.size());
    return segments_.empty() ? 0 : segments_.front().dofs();
  }

  /// Position and analytic first/second derivatives at time t.
  /// Throws OutOfRange outside [0, duration] (up to roundoff slack).
  TrajectorySample eval(double t) const {
    const double slack = 1e-9 * std::max(1.0, duration_);
    if (empty() || t < -slack || t > duration_ + slack) {
      throw OutOfRange("eval: t = " + std::to_string(t) +
                       " outside [0, " + std::to_string(duration_) + "]");
    }
    const double tc = std::clamp(t, 0.0, duration_);
    if (profile_) return eval_profile(tc);
    const CubicSegment& seg = segment_at(tc);
    return seg.eval(tc);
  }

  /// Exact per-joint maximum of |qdot| over the whole motion.
  Eigen::VectorXd peak_velocity() const {
    if (profile_) {
      return (profile_->q_end - profile_->q_start).cwiseAbs() *
             (std::numbers::pi / (2.0 * duration_));
    }
    Eigen::VectorXd peak = Eigen::VectorXd::Zero(dofs());
    for (const CubicSegment& seg : segments_) {
      for (int j = 0; j < seg.dofs(); ++j) {
        const double w = seg.width();
        double m = std::max(std::abs(seg.b[j]),
                            std::abs(seg.b[j] + 2.0 * seg.c[j] * w +
                                     3.0 * seg.d[j] * w * w));
        if (seg.d[j] != 0.0) {
          const double s_ext = -seg.c[j] / (3.0 * seg.d[j]);
          if (s_ext > 0.0 && s_ext < w) {
            m = std::max(m, std::abs(seg.b[j] + 2.0 * seg.c[j] * s_ext +
                                     3.0 * seg.d[j] * s_ext * s_ext));
          }
        }
        peak[j] = std::max(peak[j], m);
      }
    }
    return peak;
  }

  /// Exact per-joint maximum of |qddot| over the whole motion.
  Eigen::VectorXd peak_acceleration() const {
    if (profile_) {
      const double pi = std::numbers::pi;
      return (profile_->q_end - profile_->q_start).cwiseAbs() *
             (pi * pi / (2.0 * duration_ * duration_));
    }
    Eigen::VectorXd peak = Eigen::VectorXd::Zero(dofs());
    for (const CubicSegment& seg : segments_) {
      const double w = seg.width();
      for (int j = 0; j < seg.dofs(); ++j) {
        const double at_start = std::abs(2.0 * seg.c[j]);
        const double at_end = std::abs(2.0 * seg.c[j] + 6.0 * seg.d[j] * w);
        peak[j] = std::max({peak[j], at_start, at_end});
      }
    }
    return peak;
  }

  /// The same geometric path traversed alpha times slower:
  /// q'(t) = q(t / alpha). Exact for both representations.
  Trajectory time_dilated(double alpha) const {
    if (!(alpha > 0.0)) {
      throw DegenerateInterval("time_dilated: alpha must be > 0");
    }
    Trajectory out;
    out.duration_ = duration_ * alpha;
    out.dt_ = dt_;
    if (profile_) {
      SinusoidalProfile p = *profile_;
      p.duration *= alpha;
      out.profile_ = std::move(p);
      return out;
    }
    out.segments_ = segments_;
    const double inv = 1.0 / alpha;
    for (CubicSegment& seg : out.segments_) {
      seg.t0 *= alpha;
      seg.tf *= alpha;
      seg.b *= inv;
      seg.c *= inv * inv;
      seg.d *= inv * inv * inv;
    }
    return out;
  }

  const std::vector<CubicSegment>& segments() const { return segments_; }
  bool sinusoid_backed() const { return profile_.has_value(); }

 private:
  void set_dt(double dt) {
    if (!(dt > 0.0) || dt > duration_) {
      throw DegenerateInterval("dt: require 0 < dt <= duration");
    }
    dt_ = dt;
  }

  TrajectorySample eval_profile(double t) const {
    const double pi = std::numbers::pi;
    const double T = profile_->duration;
    const Eigen::VectorXd delta = profile_->q_end - profile_->q_start;
    const double phase = pi * t / T;
    TrajectorySample out;
    out.q = profile_->q_start + delta * (0.5 * (1.0 - std::cos(phase)));
    out.qd = delta * (pi / (2.0 * T) * std::sin(phase));
    out.qdd = delta * (pi * pi / (2.0 * T * T) * std::cos(phase));
    return out;
  }

  const CubicSegment& segment_at(double t) const {
    // First segment whose end covers t; the final segment owns t == duration.
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double value, const CubicSegment& seg) { return value < seg.tf; });
    if (it == segments_.end()) --it;
    return *it;
  }

  std::vector<CubicSegment> segments_;
  std::optional<SinusoidalProfile> profile_;
  double duration_ = 0.0;
  double dt_ = 0.0;
};

/// A timed joint-space target.
struct Waypoint {
  double t = 0.0;
  Eigen::VectorXd q;
};

/// Interpolating C1 spline through the waypoints. Interior knot velocities
/// come from the central finite difference of neighbouring waypoints
/// (Catmull-Rom style); endpoint velocities are zero. Times are shifted so
/// the motion starts at 0.
inline Trajectory spline_through_waypoints(const std::vector<Waypoint>& wps,
                                           double dt = 0.01) {
  if (wps.size() < 2) {
    throw TooFewWaypoints("spline_through_waypoints: need at least 2 waypoints");
  }
  const auto n = wps.front().q.size();
  for (std::size_t k = 0; k < wps.size(); ++k) {
    if (wps[k].q.size() != n) {
      throw DimensionError("waypoints[" + std::to_string(k) +
                           "].q: size differs from the first waypoint");
    }
    if (k > 0 && !(wps[k].t > wps[k - 1].t)) {
      throw NonMonotonicTimes(
          "waypoints: times must be strictly increasing (index " +
          std::to_string(k) + ")");
    }
  }
  std::vector<Eigen::VectorXd> vel(wps.size(), Eigen::VectorXd::Zero(n));
  for (std::size_t k = 1; k + 1 < wps.size(); ++k) {
    vel[k] = (wps[k + 1].q - wps[k - 1].q) / (wps[k + 1].t - wps[k - 1].t);
  }
  std::vector<CubicSegment> segments;
  segments.reserve(wps.size() - 1);
  for (std::size_t k = 0; k + 1 < wps.size(); ++k) {
    segments.push_back(fit_cubic(wps[k].q, vel[k], wps[k + 1].q, vel[k + 1],
                                 wps[k].t, wps[k + 1].t));
  }
  return Trajectory::from_segments(std::move(segments), dt);
}

/// Raised-cosine point-to-point trajectory (see Trajectory::from_profile).
inline Trajectory sinusoidal(const SinusoidalProfile& profile, double dt) {
  return Trajectory::from_profile(profile, dt);
}

struct ScaleResult {
  Trajectory trajectory;
  double alpha = 1.0;  ///< applied dilation factor (1 when already feasible)
};

/// Uniform time dilation q'(t) = q(t / alpha) with
///   alpha = max(1, peak_speed / v_max, sqrt(peak_accel / a_max))
/// over all joints. The geometric path is unchanged; velocity and
/// acceleration limits hold after scaling. Never speeds a motion up.
inline ScaleResult scale_velocity(const Trajectory& traj,
                                  const Eigen::VectorXd& v_max,
                                  const Eigen::VectorXd& a_max) {
  if (v_max.size() != traj.dofs() || a_max.size() != traj.dofs()) {
    throw DimensionError("scale_velocity: limit vectors must have one entry per joint");
  }
  if ((v_max.array() <= 0.0).any() || (a_max.array() <= 0.0).any()) {
    throw ValidationError("scale_velocity: v_max/a_max entries must be > 0");
  }
  const Eigen::VectorXd pv = traj.peak_velocity();
  const Eigen::VectorXd pa = traj.peak_acceleration();
  double alpha = 1.0;
  for (int j = 0; j < traj.dofs(); ++j) {
    alpha = std::max(alpha, pv[j] / v_max[j]);
    alpha = std::max(alpha, std::sqrt(pa[j] / a_max[j]));
  }
  if (alpha == 1.0) {
    return {traj, 1.0};
  }
  return {traj.time_dilated(alpha), alpha};
}

inline ScaleResult scale_velocity(const Trajectory& traj,
                                  const RobotModel& model) {
  const int n = model.n_joints();
  Eigen::VectorXd v_max(n), a_max(n);
  for (int j = 0; j < n; ++j) {
    v_max[j] = model.joint_limits[j].v_max;
    a_max[j] = model.joint_limits[j].a_max;
  }
  return scale_velocity(traj, v_max, a_max);
}

/// Reads a waypoint file: JSON array of {"t": seconds, "q": [n numbers]}.
inline std::vector<Waypoint> load_waypoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open waypoint file: " + path);
  }
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("waypoint file " + path + ": " + e.what());
  }
  if (!root.is_array()) {
    throw ValidationError("waypoints: expected a JSON array");
  }
  std::vector<Waypoint> wps;
  for (std::size_t k = 0; k < root.size(); ++k) {
    const nlohmann::json& item = root[k];
    const std::string where = "waypoints[" + std::to_string(k) + "]";
    if (!item.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    detail::require_keys(item, {"t", "q"}, {}, where);
    Waypoint wp;
    wp.t = detail::number_at(item, "t", where);
    const nlohmann::json& q = item.at("q");
    if (!q.is_array() || q.empty()) {
      throw ValidationError(where + ".q: expected a non-empty array of numbers");
    }
    wp.q.resize(static_cast<Eigen::Index>(q.size()));
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!q[i].is_number()) {
        throw ValidationError(where + ".q: expected a non-empty array of numbers");
      }
      wp.q[static_cast<Eigen::Index>(i)] = q[i].get<double>();
    }
    wps.push_back(std::move(wp));
  }
  return wps;
}

}  // namespace trajenergy
