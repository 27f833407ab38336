#pragma once

// Closed-form convex trigonometry of the unit L_p ball {|u|^p + |v|^p <= 1}.
//
// The boundary is parametrized by phi as
//   u = |cos phi|^{2/p} sgn cos phi,  v = |sin phi|^{2/p} sgn sin phi,
// and the doubled sector area theta(phi) is an incomplete beta integral.
// The same phi parametrizes the polar L_q ball (pq = p + q), which gives the
// theta <-> theta_polar correspondence without any root finding on the dual.

#include <cstdint>

#include "sfh/vec2.hpp"

namespace sfh::lp {

/// B(x; a, b) = int_0^x t^{a-1} (1-t)^{b-1} dt, for x in [0, 1], a, b > 0.
double incomplete_beta(double x, double a, double b);

/// Same integral with 1 - x supplied separately, so that values of x close to
/// one do not lose digits through cancellation.
double incomplete_beta(double x, double one_minus_x, double a, double b);

/// Complete beta B(a, b).
double complete_beta(double a, double b);

/// q with pq = p + q; maps 1 <-> infinity.
double conjugate_exponent(double p);

/// Area of the unit L_p ball, 4 Gamma(1+1/p)^2 / Gamma(1+2/p). p = inf gives 4.
double lp_area(double p);

/// Doubled sector area of the boundary point with parameter phi (p > 1).
double theta_from_phi(double p, double phi);

/// Inverse of theta_from_phi.
double phi_from_theta(double p, double theta);

struct LpAngleState {
  double p = 2.0;
  double q = 2.0;
  double theta = 0.0;
  double phi = 0.0;
  std::int64_t k = 0;  // floor(4 phi / pi) == floor(4 theta / S)
};

LpAngleState angle_state(double p, double theta);

/// (cos_p theta, sin_p theta).
Vec2 cos_sin_p(double p, double theta);

/// The unique polar angle corresponding to theta: the L_q angle sharing phi.
double theta_polar_from_theta(double p, double theta);

/// Derivative d theta / d phi = (1/p) 4^{1/q} |sin 2 phi|^{2/p - 1}.
double theta_phi_derivative(double p, double phi);

}  // namespace sfh::lp
