#pragma once

// Extremals of the time-optimal problem on H^{2n+1} in closed form.
//
// gamma != 0: each plane follows a scaled copy of the polar boundary,
//   theta°_i(t) = theta°_{i0} + (gamma / A_i) int_0^t lambda_i,
//   x_i = gamma A_i (sin° theta°_i - sin° theta°_{i0}),
//   y_i = gamma A_i (cos° theta°_{i0} - cos° theta°_i),
//   2z  = gamma s_Xi(A) t + sum_i A_i^2 (sin° theta°_{i0} cos° theta°_i - cos° theta°_{i0} sin° theta°_i),
// with trig taken on the polar bodies. gamma == 0: piecewise-straight motion
// along the selected control angles.

#include <cstddef>
#include <vector>

#include "sfh/trajectory.hpp"
#include "sfh/velocity_set.hpp"

namespace sfh {

/// A validated extremal that can be evaluated at any time.
class Extremal {
 public:
  /// Throws SpecInvariantViolated, DimensionMismatch, ValueOutsideFace,
  /// SideConditionViolated, NegativeComponent.
  Extremal(VelocitySet set, ExtremalSpec spec);

  const VelocitySet& set() const { return set_; }
  const ExtremalSpec& spec() const { return spec_; }
  const LambdaSchedule& lambda() const { return lambda_; }
  std::size_t dim() const { return set_.dim(); }

  HPoint state(double t) const;
  /// Exact integration of the gamma == 0 dynamics from t0 to t1 (in place).
  void advance(HPoint& q, double t0, double t1) const;

  std::vector<double> lambda_at(double t) const { return lambda_.at(t); }
  /// theta°_i(t); entries with A_i == 0 are zero.
  std::vector<double> theta_polar_at(double t) const;
  /// Control angles theta_i(t) on Omega_i.
  std::vector<double> theta_at(double t) const;
  /// (u_i, v_i) = (cos, sin)_{Omega_i} theta_i(t).
  std::vector<Vec2> control_at(double t) const;
  /// (h_i, g_i) = A_i (cos, sin)_{Omega_i°} theta°_i(t).
  std::vector<Vec2> covector_at(double t) const;

 private:
  HPoint closed_form(double t) const;

  VelocitySet set_;
  ExtremalSpec spec_;
  LambdaSchedule lambda_;
  std::vector<ConvexBody> polars_;
  std::vector<Vec2> start_polar_;  // (cos°, sin°) theta°_{i0}
  std::vector<AngleSchedule> theta_;  // gamma == 0 control angles
  double support_ = 0.0;              // s_Xi(A)
};

/// Samples the extremal on the uniform grid t_k = T k / (n_samples - 1).
Trajectory synthesize(const VelocitySet& set, const ExtremalSpec& spec, double T, std::size_t n_samples);

/// q(T). Closed form for gamma != 0; exact piecewise integration for gamma == 0.
HPoint endpoint(const VelocitySet& set, const ExtremalSpec& spec, double T);

/// max over interior samples of |z' - 1/2 sum(x_i y_i' - x_i' y_i)|, central
/// differences. Throws TooFewSamples.
double check_horizontality(const Trajectory& traj);

/// max over interior samples of |membership(U, q') - 1|. Throws TooFewSamples.
double check_unit_speed(const VelocitySet& set, const Trajectory& traj);

/// 1/2 int_0^t (X_i Y_i' - X_i' Y_i) over the sampled (piecewise-linear)
/// curve, with (X_i, Y_i) the position relative to the orbit centre
/// gamma A_i (-sin°, cos°) theta°_{i0} (the origin when the trajectory carries
/// no generating data). Over a closed loop the centre drops out. Throws
/// NotApplicable when the generating spec has gamma == 0 or A_i == 0.
double swept_area(const Trajectory& traj, std::size_t i, double t);

/// Default gamma == 0 control angle for plane i: the midpoint of the angles
/// of Omega_i corresponding to theta°_{i0}.
double default_free_angle(const ConvexBody& body, double theta0_polar);

inline constexpr double kCorrespondenceTol = 1e-9;

}  // namespace sfh
