#include "sfh/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sfh/error.hpp"
#include "sfh/lp_special.hpp"

namespace sfh {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGeomTol = 1e-12;
constexpr double kLpNearOne = 1.0 + 1e-6;
constexpr double kLpNearInf = 1e6;

double reduce_angle(double theta, double period) {
  double t = std::fmod(theta, period);
  if (t < 0.0) t += period;
  if (t >= period) t = 0.0;
  return t;
}

double p_norm(Vec2 v, double p) {
  const double ax = std::fabs(v.x);
  const double ay = std::fabs(v.y);
  if (std::isinf(p)) return std::max(ax, ay);
  if (p == 1.0) return ax + ay;
  const double m = std::max(ax, ay);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

double signed_power(double v, double e) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(v), e), v);
}

// Tables for a polygon already known to be CCW, strictly convex, origin interior.
PolygonTables build_tables(std::vector<Vec2> vertices) {
  PolygonTables t;
  const std::size_t n = vertices.size();
  t.vertices = std::move(vertices);
  const auto& v = t.vertices;
  t.normals.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = v[k];
    const Vec2 b = v[(k + 1) % n];
    const Vec2 d = b - a;
    const double c = cross(a, b);
    t.normals[k] = Vec2{d.y, -d.x} / c;
  }

  std::size_t e0 = 0;
  double s0 = 0.0;
  double x0 = 0.0;
  bool found = false;
  for (std::size_t k = 0; k < n && !found; ++k) {
    const Vec2 a = v[k];
    const Vec2 b = v[(k + 1) % n];
    if (a.y <= 0.0 && b.y > 0.0) {
      const double s = -a.y / (b.y - a.y);
      const double x = a.x + s * (b.x - a.x);
      if (x > 0.0) {
        e0 = k;
        s0 = s;
        x0 = (a.y == 0.0) ? a.x : x;
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorCode::kOriginNotInterior, "boundary does not cross the positive x-axis");

  if (s0 == 0.0) {
    for (std::size_t j = 0; j <= n; ++j) {
      const std::size_t vi = (e0 + j) % n;
      t.nodes.push_back(v[vi]);
      t.node_vertex.push_back(static_cast<int>(vi));
      if (j < n) t.node_edge.push_back(vi);
    }
    t.nodes.front().y = 0.0;
    t.nodes.back() = t.nodes.front();
  } else {
    t.nodes.push_back({x0, 0.0});
    t.node_vertex.push_back(-1);
    t.node_edge.push_back(e0);
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t vi = (e0 + j) % n;
      t.nodes.push_back(v[vi]);
      t.node_vertex.push_back(static_cast<int>(vi));
      t.node_edge.push_back(vi);
    }
    t.nodes.push_back({x0, 0.0});
    t.node_vertex.push_back(-1);
  }

  const std::size_t m = t.nodes.size();
  t.node_theta.assign(m, 0.0);
  t.node_angle.assign(m, 0.0);
  for (std::size_t j = 1; j < m; ++j) {
    t.node_theta[j] = t.node_theta[j - 1] + cross(t.nodes[j - 1], t.nodes[j]);
    t.node_angle[j] = polar_angle(t.nodes[j]);
  }
  t.node_angle.back() = kTwoPi;
  t.double_area = t.node_theta.back();

  t.vertex_theta.assign(n, 0.0);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (t.node_vertex[j] >= 0) t.vertex_theta[static_cast<std::size_t>(t.node_vertex[j])] = t.node_theta[j];
  }
  return t;
}

std::vector<Vec2> dual_vertices(const PolygonTables& t) { return t.normals; }

Vec2 polygon_point_at(const PolygonTables& t, double theta) {
  const double u = reduce_angle(theta, t.double_area);
  auto it = std::upper_bound(t.node_theta.begin(), t.node_theta.end(), u);
  std::size_t j = (it == t.node_theta.begin()) ? 0 : static_cast<std::size_t>(it - t.node_theta.begin()) - 1;
  j = std::min(j, t.nodes.size() - 2);
  const Vec2 a = t.nodes[j];
  const Vec2 b = t.nodes[j + 1];
  const double seg = cross(a, b);
  const double s = std::clamp((u - t.node_theta[j]) / seg, 0.0, 1.0);
  if (s == 0.0) return a;
  if (s == 1.0) return b;
  return a + s * (b - a);
}

double polygon_sector(const PolygonTables& t, Vec2 x) {
  const double alpha = polar_angle(x);
  auto it = std::upper_bound(t.node_angle.begin(), t.node_angle.end(), alpha);
  std::size_t j = (it == t.node_angle.begin()) ? 0 : static_cast<std::size_t>(it - t.node_angle.begin()) - 1;
  j = std::min(j, t.nodes.size() - 2);
  double theta = t.node_theta[j] + cross(t.nodes[j], x);
  if (theta < 0.0) theta = 0.0;
  if (theta >= t.double_area) theta -= t.double_area;
  return theta;
}

double polygon_support(const PolygonTables& t, Vec2 c) {
  double best = -INFINITY;
  for (const Vec2& v : t.vertices) best = std::max(best, dot(v, c));
  return best;
}

double polygon_gauge(const PolygonTables& t, Vec2 x) {
  double best = 0.0;
  for (const Vec2& a : t.normals) best = std::max(best, dot(a, x));
  return best;
}

EllipseShape make_ellipse_shape(double q11, double q12, double q22) {
  if (!(q11 > 0.0) || !(q11 * q22 - q12 * q12 > 0.0) || !std::isfinite(q11 + q12 + q22)) {
    throw Error(ErrorCode::kDomainError, "ellipse matrix must be symmetric positive definite");
  }
  EllipseShape e{q11, q12, q22};
  const double l11 = std::sqrt(q11);
  const double l21 = q12 / l11;
  const double l22 = std::sqrt(q22 - l21 * l21);
  e.m11 = 1.0 / l11;
  e.m12 = -l21 / (l11 * l22);
  e.m22 = 1.0 / l22;
  return e;
}

const BodyShape& side(const ConvexBody::Pair& p, bool dual) { return dual ? p.dual : p.primal; }

}  // namespace

ConvexBody make_body(std::shared_ptr<const ConvexBody::Pair> pair) { return ConvexBody(std::move(pair), false); }

namespace {

ConvexBody polygon_pair(std::vector<Vec2> ccw) {
  auto pair = std::make_shared<ConvexBody::Pair>();
  PolygonTables primal = build_tables(std::move(ccw));
  PolygonTables dual = build_tables(dual_vertices(primal));
  pair->primal_period = primal.double_area;
  pair->dual_period = dual.double_area;
  pair->primal = std::move(primal);
  pair->dual = std::move(dual);
  return make_body(std::move(pair));
}

std::vector<Vec2> validate_polygon(std::span<const Vec2> input) {
  if (input.size() < 3) throw Error(ErrorCode::kDegenerateInput, "polygon needs at least 3 vertices");
  for (const Vec2& p : input) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorCode::kDegenerateInput, "non-finite vertex");
  }
  for (std::size_t i = 0; i < input.size(); ++i) {
    for (std::size_t j = i + 1; j < input.size(); ++j) {
      if (input[i] == input[j]) throw Error(ErrorCode::kDegenerateInput, "duplicate vertex");
    }
  }
  double scale = 0.0;
  for (const Vec2& p : input) scale = std::max(scale, norm(p));
  if (scale == 0.0) throw Error(ErrorCode::kDegenerateInput, "all vertices at the origin");

  std::vector<Vec2> v(input.begin(), input.end());
  double twice_area = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) twice_area += cross(v[k], v[(k + 1) % v.size()]);
  if (std::fabs(twice_area) <= kGeomTol * scale * scale) throw Error(ErrorCode::kDegenerateInput, "zero area");
  if (twice_area < 0.0) std::reverse(v.begin(), v.end());

  // Merge collinear runs; any right turn is a convexity violation.
  bool merged = true;
  while (merged && v.size() >= 3) {
    merged = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 prev = v[(i + n - 1) % n];
      const Vec2 next = v[(i + 1) % n];
      const Vec2 d1 = v[i] - prev;
      const Vec2 d2 = next - v[i];
      const double sine = cross(d1, d2) / (norm(d1) * norm(d2));
      if (std::fabs(sine) <= kGeomTol) {
        if (dot(d1, d2) < 0.0) throw Error(ErrorCode::kNotConvex, "polygon folds back on itself");
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        merged = true;
        break;
      }
      if (sine < 0.0) throw Error(ErrorCode::kNotConvex, "reflex vertex at index " + std::to_string(i));
    }
  }
  if (v.size() < 3) throw Error(ErrorCode::kDegenerateInput, "fewer than 3 vertices after merging collinear runs");

  double winding = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d1 = v[i] - v[(i + n - 1) % n];
    const Vec2 d2 = v[(i + 1) % n] - v[i];
    winding += std::atan2(cross(d1, d2), dot(d1, d2));
  }
  if (std::fabs(winding - kTwoPi) > 1e-6) throw Error(ErrorCode::kNotConvex, "polygon winds more than once");

  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = v[k];
    const Vec2 b = v[(k + 1) % n];
    const double dist = cross(a, b) / norm(b - a);
    if (!(dist > kGeomTol * scale)) {
      throw Error(ErrorCode::kOriginNotInterior, "origin is not strictly inside edge " + std::to_string(k));
    }
  }
  return v;
}

}  // namespace

BodyKind ConvexBody::kind() const {
  switch (shape().index()) {
    case 0: return BodyKind::kPolygon;
    case 1: return BodyKind::kLpBall;
    case 2: return BodyKind::kDisc;
    default: return BodyKind::kEllipse;
  }
}

const BodyShape& ConvexBody::shape() const { return side(*pair_, dual_); }

const PolygonTables* ConvexBody::polygon() const {
  const BodyShape& s = shape();
  if (const auto* poly = std::get_if<PolygonTables>(&s)) return poly;
  if (const auto* lp = std::get_if<LpShape>(&s)) return lp->exact ? &*lp->exact : nullptr;
  return nullptr;
}

std::size_t ConvexBody::dual_vertex_of_edge(std::size_t edge) const {
  const PolygonTables* poly = polygon();
  const std::size_t n = poly ? poly->vertices.size() : 0;
  if (n == 0) throw Error(ErrorCode::kNotApplicable, "body is not polygon-backed");
  // Primal edge k has normal dual vertex k; dual edge k (a_k -> a_{k+1}) has
  // normal primal vertex k + 1.
  return dual_ ? (edge + 1) % n : edge % n;
}

double ConvexBody::period() const { return dual_ ? pair_->dual_period : pair_->primal_period; }

ConvexBody polygon_from_vertices(std::span<const Vec2> vertices) { return polygon_pair(validate_polygon(vertices)); }

ConvexBody lp_ball(double p) {
  if (!(p >= 1.0) || std::isnan(p)) throw Error(ErrorCode::kDomainError, "L_p ball needs p >= 1");
  const double q = lp::conjugate_exponent(p);
  auto pair = std::make_shared<ConvexBody::Pair>();
  LpShape primal{p, std::nullopt};
  LpShape dual{q, std::nullopt};
  if (p <= kLpNearOne || p >= kLpNearInf) {
    std::vector<Vec2> verts = (p <= kLpNearOne)
                                  ? std::vector<Vec2>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}
                                  : std::vector<Vec2>{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    PolygonTables pt = build_tables(std::move(verts));
    PolygonTables dt = build_tables(dual_vertices(pt));
    pair->primal_period = pt.double_area;
    pair->dual_period = dt.double_area;
    primal.exact = std::move(pt);
    dual.exact = std::move(dt);
  } else {
    pair->primal_period = 2.0 * lp::lp_area(p);
    pair->dual_period = 2.0 * lp::lp_area(q);
  }
  pair->primal = std::move(primal);
  pair->dual = std::move(dual);
  return make_body(std::move(pair));
}

ConvexBody disc(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::kDomainError, "disc radius must be positive");
  auto pair = std::make_shared<ConvexBody::Pair>();
  pair->primal = DiscShape{radius};
  pair->dual = DiscShape{1.0 / radius};
  pair->primal_period = 2.0 * std::numbers::pi * radius * radius;
  pair->dual_period = 2.0 * std::numbers::pi / (radius * radius);
  return make_body(std::move(pair));
}

ConvexBody ellipse(double q11, double q12, double q22) {
  auto pair = std::make_shared<ConvexBody::Pair>();
  const EllipseShape e = make_ellipse_shape(q11, q12, q22);
  const double det = q11 * q22 - q12 * q12;
  pair->primal = e;
  pair->dual = make_ellipse_shape(q22 / det, -q12 / det, q11 / det);
  pair->primal_period = 2.0 * std::numbers::pi / std::sqrt(det);
  pair->dual_period = 2.0 * std::numbers::pi * std::sqrt(det);
  return make_body(std::move(pair));
}

double support(const ConvexBody& body, Vec2 c) {
  if (const PolygonTables* poly = body.polygon()) return polygon_support(*poly, c);
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LpShape>) {
          return p_norm(c, lp::conjugate_exponent(s.p));
        } else if constexpr (std::is_same_v<S, DiscShape>) {
          return s.radius * norm(c);
        } else if constexpr (std::is_same_v<S, EllipseShape>) {
          const double det = s.q11 * s.q22 - s.q12 * s.q12;
          const double v = (s.q22 * c.x * c.x - 2.0 * s.q12 * c.x * c.y + s.q11 * c.y * c.y) / det;
          return std::sqrt(std::max(0.0, v));
        } else {
          return 0.0;
        }
      },
      body.shape());
}

Vec2 support_point(const ConvexBody& body, Vec2 c) {
  if (c.x == 0.0 && c.y == 0.0) return {};
  if (const PolygonTables* poly = body.polygon()) {
    const auto& v = poly->vertices;
    const std::size_t n = v.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (dot(v[k], c) > dot(v[best], c)) best = k;
    }
    const double top = dot(v[best], c);
    const double tol = kGeomTol * norm(c) * norm(v[best]);
    const std::size_t next = (best + 1) % n;
    const std::size_t prev = (best + n - 1) % n;
    if (top - dot(v[next], c) <= tol) return 0.5 * (v[best] + v[next]);
    if (top - dot(v[prev], c) <= tol) return 0.5 * (v[prev] + v[best]);
    return v[best];
  }
  return std::visit(
      [&](const auto& s) -> Vec2 {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LpShape>) {
          // Gradient of the dual norm ||c||_q.
          const double q = lp::conjugate_exponent(s.p);
          const double m = std::max(std::fabs(c.x), std::fabs(c.y));
          const Vec2 u = c / m;
          const double nq = p_norm(u, q);
          return {signed_power(u.x / nq, q - 1.0), signed_power(u.y / nq, q - 1.0)};
        } else if constexpr (std::is_same_v<S, DiscShape>) {
          return s.radius / norm(c) * c;
        } else if constexpr (std::is_same_v<S, EllipseShape>) {
          const double det = s.q11 * s.q22 - s.q12 * s.q12;
          const Vec2 w{(s.q22 * c.x - s.q12 * c.y) / det, (s.q11 * c.y - s.q12 * c.x) / det};
          return w / std::sqrt(std::max(0.0, dot(w, c)));
        } else {
          return Vec2{};
        }
      },
      body.shape());
}

double minkowski_functional(const ConvexBody& body, Vec2 x) {
  if (const PolygonTables* poly = body.polygon()) return polygon_gauge(*poly, x);
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LpShape>) {
          return p_norm(x, s.p);
        } else if constexpr (std::is_same_v<S, DiscShape>) {
          return norm(x) / s.radius;
        } else if constexpr (std::is_same_v<S, EllipseShape>) {
          const double v = s.q11 * x.x * x.x + 2.0 * s.q12 * x.x * x.y + s.q22 * x.y * x.y;
          return std::sqrt(std::max(0.0, v));
        } else {
          return 0.0;
        }
      },
      body.shape());
}

double area(const ConvexBody& body) { return 0.5 * body.period(); }

Vec2 boundary_point_at_area(const ConvexBody& body, double theta) {
  if (const PolygonTables* poly = body.polygon()) return polygon_point_at(*poly, theta);
  const double t = reduce_angle(theta, body.period());
  return std::visit(
      [&](const auto& s) -> Vec2 {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LpShape>) {
          return lp::cos_sin_p(s.p, t);
        } else if constexpr (std::is_same_v<S, DiscShape>) {
          const double a = t / (s.radius * s.radius);
          return {s.radius * std::cos(a), s.radius * std::sin(a)};
        } else if constexpr (std::is_same_v<S, EllipseShape>) {
          const double a = t / (s.m11 * s.m22);
          const double c = std::cos(a);
          const double sn = std::sin(a);
          return {s.m11 * c + s.m12 * sn, s.m22 * sn};
        } else {
          return {};
        }
      },
      body.shape());
}

double sector_area_of_boundary_point(const ConvexBody& body, Vec2 point) {
  const double mu = minkowski_functional(body, point);
  if (!(std::fabs(mu - 1.0) <= kBoundaryTol)) {
    throw Error(ErrorCode::kNotOnBoundary, "point has gauge " + std::to_string(mu));
  }
  const Vec2 x = point / mu;
  if (const PolygonTables* poly = body.polygon()) return polygon_sector(*poly, x);
  const double period = body.period();
  double theta = std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LpShape>) {
          const double e = s.p / 2.0;
          const double phi = polar_angle({signed_power(x.x, e), signed_power(x.y, e)});
          return lp::theta_from_phi(s.p, phi);
        } else if constexpr (std::is_same_v<S, DiscShape>) {
          return s.radius * s.radius * polar_angle(x);
        } else if constexpr (std::is_same_v<S, EllipseShape>) {
          const Vec2 w{x.x / s.m11 - s.m12 * x.y / (s.m11 * s.m22), x.y / s.m22};
          return s.m11 * s.m22 * polar_angle(w);
        } else {
          return 0.0;
        }
      },
      body.shape());
  if (theta >= period) theta -= period;
  if (theta < 0.0) theta = 0.0;
  return theta;
}

ConvexBody polygonal_approximation(const ConvexBody& body, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::kDegenerateInput, "polygonal approximation needs n >= 3");
  std::vector<Vec2> pts;
  pts.reserve(n);
  const double period = body.period();
  for (std::size_t k = 0; k < n; ++k) {
    pts.push_back(boundary_point_at_area(body, period * static_cast<double>(k) / static_cast<double>(n)));
  }
  return polygon_from_vertices(pts);
}

}  // namespace sfh
