#pragma once

// Extremal data and sampled curves on H^{2n+1} = R^n x R^n* x R.

#include <cstddef>
#include <optional>
#include <vector>

#include "sfh/vec2.hpp"
#include "sfh/velocity_set.hpp"

namespace sfh {

/// Piecewise-constant angle-valued function of time; starts[0] == 0.
struct AngleSchedule {
  std::vector<double> starts;
  std::vector<double> values;

  static AngleSchedule constant(double v) { return {{0.0}, {v}}; }
  double at(double t) const;
  /// Piece boundaries strictly inside (t0, t1).
  std::vector<double> breakpoints(double t0, double t1) const;
};

/// Lagrange data of an extremal.
struct ExtremalSpec {
  int gamma = 1;  // -1, 0 or 1
  std::vector<double> A;
  /// theta°_{i0}; entries with A_i == 0 are ignored.
  std::vector<double> theta0_polar;
  /// Defaults to the face barycenter (with the side condition applied).
  std::optional<LambdaSchedule> lambda;
  /// gamma == 0 only: per-plane control angles; empty or nullopt entries use
  /// the midpoint of the corresponding interval.
  std::vector<std::optional<AngleSchedule>> theta_free;
};

/// A point of H^{2n+1}: (x_i, y_i) per plane, then z.
struct HPoint {
  std::vector<Vec2> xy;
  double z = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<HPoint> states;
  /// Generating data, when known.
  std::optional<ExtremalSpec> spec;
  std::optional<VelocitySet> set;

  std::size_t dim() const { return states.empty() ? 0 : states.front().xy.size(); }
  std::size_t size() const { return times.size(); }
};

}  // namespace sfh
