#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <memory>
#include <span>
#include <vector>

#include "sfh/convex_body.hpp"

namespace sfh {

/// Closed interval of generalized angles. A corner of the body maps to a
/// proper interval; a smooth boundary point maps to a degenerate one.
struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool degenerate() const { return lo == hi; }
  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Closed range of real values.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v, double tol) const { return v >= lo - tol && v <= hi + tol; }
};

struct DerivativeRanges {
  Range dcos;
  Range dsin;
};

struct PolarCoords {
  double r = 0.0;
  double theta = 0.0;
};

/// (cos_Omega theta, sin_Omega theta).
inline Vec2 cos_sin(const ConvexBody& body, double theta) { return boundary_point_at_area(body, theta); }

/// The maximal interval of polar angles theta° with theta <-> theta°.
/// Quasiperiodic: shifting theta by k periods shifts the result by k polar periods.
AngleInterval corresponding_angles(const ConvexBody& body, double theta);

/// Ranges of the one-sided derivatives of cos_Omega and sin_Omega at theta.
DerivativeRanges derivative_interval(const ConvexBody& body, double theta);

/// cos_Omega(theta) cos_Omega°(theta°) + sin_Omega(theta) sin_Omega°(theta°); <= 1, == 1 iff the angles correspond.
double pythagorean_value(const ConvexBody& body, double theta, double theta_polar);

/// Generalized polar coordinates: x = r cos_Omega theta, y = r sin_Omega theta.
PolarCoords angle_from_point(const ConvexBody& body, Vec2 point);

/// Continuous branch of theta along a sampled curve, anchored at the first sample.
std::vector<double> angular_velocity_along_curve(const ConvexBody& body, std::span<const Vec2> samples);

/// Doubled-area angles of the body's corners in [0, period); empty for smooth bodies.
std::vector<double> corner_angles(const ConvexBody& body);

/// cos/sin evaluated from the gauge alone by integrating the squared radial
/// function; shares no code with the per-shape closed forms.
class QuadratureTrig {
 public:
  explicit QuadratureTrig(ConvexBody body);

  Vec2 cos_sin(double theta) const;
  double period() const { return period_; }
  /// Doubled sector area between polar angles 0 and psi, psi in [0, 2 pi].
  double sector(double psi) const;

 private:
  double radius(double psi) const;
  double integrate(double a, double b) const;

  ConvexBody body_;
  // Not thread-safe: the integrator grows its abscissa tables lazily.
  std::shared_ptr<boost::math::quadrature::tanh_sinh<double>> integrator_;
  std::vector<double> breaks_;
  double quarter_[4] = {0, 0, 0, 0};
  double period_ = 0.0;
};

}  // namespace sfh
