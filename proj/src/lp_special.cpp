#include "sfh/lp_special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sfh/error.hpp"

namespace sfh::lp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Modified Lentz evaluation of the continued fraction for the incomplete beta.
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIter = 200;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// x^a (1-x)^b / a * CF, valid on the convergent side x < (a+1)/(a+b+2).
double lower_tail(double x, double one_minus_x, double a, double b) {
  if (x == 0.0) return 0.0;
  const double front = std::exp(a * std::log(x) + b * std::log(one_minus_x));
  return front / a * beta_continued_fraction(x, a, b);
}

double sector_scale(double p) { return std::pow(4.0, -1.0 / p) / p; }

// F(delta) = (1/p) 4^{-1/p} B(sin^2 2 delta; 1/p, 1/2) for delta in [0, pi/4].
double quarter_theta(double p, double delta) {
  const double s = std::sin(2.0 * delta);
  const double c = std::cos(2.0 * delta);
  return sector_scale(p) * incomplete_beta(s * s, c * c, 1.0 / p, 0.5);
}

// phi = j pi/2 + sign * delta with delta in [0, pi/4].
struct ReducedPhi {
  std::int64_t j = 0;
  int sign = 1;
  double delta = 0.0;
};

ReducedPhi reduce_phi(double phi) {
  const auto k = static_cast<std::int64_t>(std::floor(phi / kQuarterPi));
  ReducedPhi r;
  if (k % 2 == 0) {
    r.j = k / 2;
    r.sign = 1;
    r.delta = phi - static_cast<double>(r.j) * kHalfPi;
  } else {
    r.j = (k + 1) / 2;
    r.sign = -1;
    r.delta = static_cast<double>(r.j) * kHalfPi - phi;
  }
  if (r.delta < 0.0) r.delta = 0.0;
  if (r.delta > kQuarterPi) r.delta = kQuarterPi;
  return r;
}

double theta_from_reduced(double p, double area, const ReducedPhi& r) {
  return static_cast<double>(r.j) * area / 2.0 + r.sign * quarter_theta(p, r.delta);
}

std::int64_t floor_div2(std::int64_t k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

// Solves theta_from_phi(p, phi) = theta in reduced coordinates.
ReducedPhi solve_reduced(double p, double theta) {
  const double area = lp_area(p);
  const auto k = static_cast<std::int64_t>(std::floor(4.0 * theta / area));
  ReducedPhi r;
  double target = 0.0;
  if (k % 2 == 0) {
    r.j = floor_div2(k);
    r.sign = 1;
    target = theta - static_cast<double>(r.j) * area / 2.0;
  } else {
    r.j = floor_div2(k) + 1;
    r.sign = -1;
    target = static_cast<double>(r.j) * area / 2.0 - theta;
  }
  const double quarter = area / 4.0;
  if (target <= 0.0) {
    r.delta = 0.0;
    return r;
  }
  if (target >= quarter) {
    r.delta = kQuarterPi;
    return r;
  }
  // Newton in y = delta^{2/p}: F behaves like y near delta = 0 for every p,
  // and dF/dy = (1/2) 4^{1/q} (sin 2 delta / delta)^{2/p - 1} stays bounded,
  // so the iteration is well conditioned across the whole quarter. The
  // bracket [lo, hi] in y keeps every step safe; bisection is the fallback.
  const double e = 2.0 / p;
  const double slope_scale = 0.5 * std::pow(4.0, 1.0 - 1.0 / p);
  double lo = 0.0;
  double hi = std::pow(kQuarterPi, e);
  double y = hi * (target / quarter);
  double delta = kQuarterPi;
  for (int it = 0; it < 200; ++it) {
    delta = std::pow(y, 1.0 / e);
    const double f = quarter_theta(p, delta) - target;
    if (f == 0.0) break;
    if (f < 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    const double ratio = delta > 1e-8 ? std::sin(2.0 * delta) / delta : 2.0;
    double next = y - f / (slope_scale * std::pow(ratio, e - 1.0));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - y) <= 2e-16 * y || hi - lo <= 2e-16 * hi) {
      y = next;
      delta = std::pow(y, 1.0 / e);
      break;
    }
    y = next;
  }
  r.delta = delta;
  return r;
}

Vec2 unit_circle_point(const ReducedPhi& r) {
  const double eps = r.sign * r.delta;
  const double c = std::cos(eps);
  const double s = std::sin(eps);
  switch (((r.j % 4) + 4) % 4) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

double signed_power(double v, double e) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(v), e), v);
}

}  // namespace

double complete_beta(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double incomplete_beta(double x, double a, double b) { return incomplete_beta(x, 1.0 - x, a, b); }

double incomplete_beta(double x, double one_minus_x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0) || !(one_minus_x >= 0.0) ||
      !(one_minus_x <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "incomplete_beta requires x in [0,1], a > 0, b > 0");
  }
  if (x == 0.0) return 0.0;
  if (one_minus_x == 0.0) return complete_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) return lower_tail(x, one_minus_x, a, b);
  return complete_beta(a, b) - lower_tail(one_minus_x, x, b, a);
}

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double lp_area(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kDomainError, "lp_area requires p >= 1");
  if (std::isinf(p)) return 4.0;
  const double g1 = std::tgamma(1.0 + 1.0 / p);
  return 4.0 * g1 * g1 / std::tgamma(1.0 + 2.0 / p);
}

double theta_phi_derivative(double p, double phi) {
  const double q = conjugate_exponent(p);
  const double s = std::fabs(std::sin(2.0 * phi));
  return std::pow(4.0, 1.0 / q) / p * std::pow(s, 2.0 / p - 1.0);
}

double theta_from_phi(double p, double phi) {
  return theta_from_reduced(p, lp_area(p), reduce_phi(phi));
}

double phi_from_theta(double p, double theta) {
  const ReducedPhi r = solve_reduced(p, theta);
  return static_cast<double>(r.j) * kHalfPi + r.sign * r.delta;
}

LpAngleState angle_state(double p, double theta) {
  LpAngleState s;
  s.p = p;
  s.q = conjugate_exponent(p);
  s.theta = theta;
  s.phi = phi_from_theta(p, theta);
  s.k = static_cast<std::int64_t>(std::floor(4.0 * theta / lp_area(p)));
  return s;
}

Vec2 cos_sin_p(double p, double theta) {
  const Vec2 w = unit_circle_point(solve_reduced(p, theta));
  const double e = 2.0 / p;
  return {signed_power(w.x, e), signed_power(w.y, e)};
}

double theta_polar_from_theta(double p, double theta) {
  const double q = conjugate_exponent(p);
  return theta_from_reduced(q, lp_area(q), solve_reduced(p, theta));
}

}  // namespace sfh::lp
