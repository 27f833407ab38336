#include "sfh/convex_trig.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "sfh/error.hpp"
#include "sfh/lp_special.hpp"

namespace sfh {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCornerTol = 1e-12;

// Polar angle of P_t, continuous on [0, period): the end of the period maps
// near 2 pi, never back to 0.
double boundary_polar_angle(Vec2 point, double t, double period) {
  double alpha = polar_angle(point);
  if (alpha < kPi && point.y <= 0.0 && t > 0.5 * period) alpha = kTwoPi;
  return alpha;
}

// Lifts the doubled-area angle of covector c (value `base` in [0, polar
// period)) onto the branch whose polar angle lies within pi of alpha.
double lift(Vec2 c, double base, double alpha, double polar_period) {
  const double beta = polar_angle(c);
  if (beta - alpha > kPi) return base - polar_period;
  if (beta - alpha < -kPi) return base + polar_period;
  return base;
}

AngleInterval polygon_correspondence(const ConvexBody& body, const PolygonTables& t, double u) {
  const ConvexBody pol = body.polar();
  const PolygonTables& dual = *pol.polygon();
  const double period = t.double_area;
  const double polar_period = dual.double_area;
  const std::size_t n = t.vertices.size();

  const Vec2 point = boundary_point_at_area(body, u);
  const double alpha = boundary_polar_angle(point, u, period);

  auto lifted_normal = [&](std::size_t edge) {
    const std::size_t dv = body.dual_vertex_of_edge(edge);
    return lift(t.normals[edge], dual.vertex_theta[dv], alpha, polar_period);
  };

  // Corner detection against every vertex angle (with wrap-around at 0).
  const double tol = kCornerTol * period;
  for (std::size_t m = 0; m < n; ++m) {
    const double vt = t.vertex_theta[m];
    const double d = std::min(std::fabs(u - vt), period - std::fabs(u - vt));
    if (d <= tol) {
      const std::size_t prev = (m + n - 1) % n;
      return {lifted_normal(prev), lifted_normal(m)};
    }
  }
  auto it = std::upper_bound(t.node_theta.begin(), t.node_theta.end(), u);
  std::size_t j = (it == t.node_theta.begin()) ? 0 : static_cast<std::size_t>(it - t.node_theta.begin()) - 1;
  j = std::min(j, t.nodes.size() - 2);
  const double v = lifted_normal(t.node_edge[j]);
  return {v, v};
}

}  // namespace

AngleInterval corresponding_angles(const ConvexBody& body, double theta) {
  const BodyShape& shape = body.shape();
  if (const auto* lp = std::get_if<LpShape>(&shape); lp && !lp->exact) {
    const double v = lp::theta_polar_from_theta(lp->p, theta);
    return {v, v};
  }
  if (const auto* d = std::get_if<DiscShape>(&shape)) {
    const double r2 = d->radius * d->radius;
    const double v = theta / (r2 * r2);
    return {v, v};
  }

  const double period = body.period();
  const double polar_period = body.polar().period();
  const double k = std::floor(theta / period);
  double u = theta - k * period;
  if (u < 0.0) u = 0.0;
  if (u >= period) u = 0.0;

  AngleInterval base;
  if (const PolygonTables* poly = body.polygon()) {
    base = polygon_correspondence(body, *poly, u);
  } else {
    const auto& e = std::get<EllipseShape>(shape);
    const Vec2 point = boundary_point_at_area(body, u);
    const double alpha = boundary_polar_angle(point, u, period);
    const Vec2 c{e.q11 * point.x + e.q12 * point.y, e.q12 * point.x + e.q22 * point.y};
    const ConvexBody pol = body.polar();
    const double v = lift(c, sector_area_of_boundary_point(pol, c / minkowski_functional(pol, c)), alpha,
                          polar_period);
    base = {v, v};
  }
  return {base.lo + k * polar_period, base.hi + k * polar_period};
}

DerivativeRanges derivative_interval(const ConvexBody& body, double theta) {
  const AngleInterval iv = corresponding_angles(body, theta);
  const ConvexBody pol = body.polar();
  const Vec2 a = cos_sin(pol, iv.lo);
  const Vec2 b = iv.degenerate() ? a : cos_sin(pol, iv.hi);
  DerivativeRanges r;
  r.dcos = {std::min(-a.y, -b.y), std::max(-a.y, -b.y)};
  r.dsin = {std::min(a.x, b.x), std::max(a.x, b.x)};
  return r;
}

double pythagorean_value(const ConvexBody& body, double theta, double theta_polar) {
  const Vec2 p = cos_sin(body, theta);
  const Vec2 c = cos_sin(body.polar(), theta_polar);
  return dot(p, c);
}

PolarCoords angle_from_point(const ConvexBody& body, Vec2 point) {
  if (point.x == 0.0 && point.y == 0.0) throw Error(ErrorCode::kOriginInput, "polar coordinates of the origin");
  const double r = minkowski_functional(body, point);
  return {r, sector_area_of_boundary_point(body, point / r)};
}

std::vector<double> angular_velocity_along_curve(const ConvexBody& body, std::span<const Vec2> samples) {
  std::vector<double> out;
  if (samples.empty()) return out;
  double scale = 0.0;
  for (const Vec2& p : samples) scale = std::max(scale, norm(p));
  for (const Vec2& p : samples) {
    if (!(norm(p) > 1e-12 * scale) || scale == 0.0) {
      throw Error(ErrorCode::kOriginCrossing, "sampled curve passes through the origin");
    }
  }
  const double period = body.period();
  out.reserve(samples.size());
  out.push_back(angle_from_point(body, samples[0]).theta);
  double r_prev = minkowski_functional(body, samples[0]);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    // Chord increment of int (x y' - x' y) / r^2; only used to pick the branch.
    const PolarCoords pc = angle_from_point(body, samples[k]);
    const double estimate = out.back() + cross(samples[k - 1], samples[k]) / (r_prev * pc.r);
    const double wraps = std::round((estimate - pc.theta) / period);
    out.push_back(pc.theta + wraps * period);
    r_prev = pc.r;
  }
  return out;
}

std::vector<double> corner_angles(const ConvexBody& body) {
  if (const PolygonTables* poly = body.polygon()) {
    std::vector<double> out = poly->vertex_theta;
    std::sort(out.begin(), out.end());
    return out;
  }
  return {};
}

QuadratureTrig::QuadratureTrig(ConvexBody body)
    : body_(std::move(body)), integrator_(std::make_shared<boost::math::quadrature::tanh_sinh<double>>()) {
  // The squared radial function is smooth between the axes and the corners;
  // |sin|^p-type behaviour at the axes is an endpoint singularity, which
  // tanh-sinh absorbs.
  breaks_ = {0.0, kPi / 2.0, kPi, 1.5 * kPi, kTwoPi};
  if (const PolygonTables* poly = body_.polygon()) {
    for (const Vec2& v : poly->vertices) breaks_.push_back(polar_angle(v));
  }
  std::sort(breaks_.begin(), breaks_.end());
  for (int k = 0; k < 4; ++k) quarter_[k] = integrate(k * kPi / 2.0, (k + 1) * kPi / 2.0);
  period_ = quarter_[0] + quarter_[1] + quarter_[2] + quarter_[3];
}

double QuadratureTrig::radius(double psi) const {
  return 1.0 / minkowski_functional(body_, {std::cos(psi), std::sin(psi)});
}

double QuadratureTrig::integrate(double a, double b) const {
  if (b <= a) return 0.0;
  auto f = [this](double psi) {
    const double r = radius(psi);
    return r * r;
  };
  double acc = 0.0;
  double lo = a;
  for (double br : breaks_) {
    if (br <= lo) continue;
    const double hi = std::min(br, b);
    if (hi > lo) acc += integrator_->integrate(f, lo, hi, 1e-14);
    lo = hi;
    if (lo >= b) break;
  }
  return acc;
}

double QuadratureTrig::sector(double psi) const {
  double acc = 0.0;
  int k = 0;
  while (k < 4 && psi >= (k + 1) * kPi / 2.0) acc += quarter_[k++];
  if (k < 4) acc += integrate(k * kPi / 2.0, psi);
  return acc;
}

Vec2 QuadratureTrig::cos_sin(double theta) const {
  double u = std::fmod(theta, period_);
  if (u < 0.0) u += period_;
  int k = 0;
  while (k < 3 && u >= quarter_[k]) u -= quarter_[k++];
  const double a = k * kPi / 2.0;
  double lo = a;
  double hi = a + kPi / 2.0;
  // Newton on psi with bisection fallback; d(sector)/d psi = r(psi)^2.
  double psi = a + (u / quarter_[k]) * (kPi / 2.0);
  for (int it = 0; it < 60; ++it) {
    const double f = integrate(a, psi) - u;
    if (std::fabs(f) <= 1e-15 * period_) break;
    if (f > 0.0) {
      hi = psi;
    } else {
      lo = psi;
    }
    const double r = radius(psi);
    double next = psi - f / (r * r);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == psi) break;
    psi = next;
  }
  const double r = radius(psi);
  return {r * std::cos(psi), r * std::sin(psi)};
}

}  // namespace sfh
