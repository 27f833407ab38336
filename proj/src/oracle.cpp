#include "sfh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <variant>

#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"

namespace sfh {
namespace {

using Mode = std::vector<int>;

PMPState axpy(const PMPState& s, const PMPState& k, double h) {
  PMPState r = s;
  for (std::size_t i = 0; i < s.xy.size(); ++i) {
    r.xy[i] = s.xy[i] + h * k.xy[i];
    r.hg[i] = s.hg[i] + h * k.hg[i];
  }
  r.z = s.z + h * k.z;
  return r;
}

// The PMP vector field with the control on polygon planes pinned to a mode:
// a vertex index, or -1 - e for the midpoint of edge e (a persistent tie,
// which only happens for gamma == 0). On L_p planes the mode is the covector
// quadrant: the field is only Holder where a component crosses zero, so
// those crossings are located like switches and stepped over finely.
class FrozenSystem {
 public:
  FrozenSystem(const VelocitySet& set, double gamma) : set_(set), gamma_(gamma) {
    for (std::size_t i = 0; i < set_.dim(); ++i) {
      const ConvexBody& b = set_.body(i);
      holder_.push_back(b.polygon() == nullptr && std::holds_alternative<LpShape>(b.shape()));
    }
  }

  void freeze_active(std::span<const double> A) {
    if (set_.outer().kind() != OuterNorm::Kind::kSum) return;
    // A is a first integral, so the argmax set of a sum norm never changes.
    sum_face_ = xi_subdifferential(set_.outer(), A);
  }

  Mode mode_at(const PMPState& s) const {
    Mode m(set_.dim(), 0);
    for (std::size_t i = 0; i < set_.dim(); ++i) {
      const PolygonTables* poly = set_.body(i).polygon();
      const Vec2 c = s.hg[i];
      if (holder_[i]) {
        m[i] = (c.x >= 0.0 ? 1 : 0) + (c.y >= 0.0 ? 2 : 0);
        continue;
      }
      if (poly == nullptr || (c.x == 0.0 && c.y == 0.0)) continue;
      const auto& v = poly->vertices;
      const std::size_t n = v.size();
      std::size_t best = 0;
      for (std::size_t k = 1; k < n; ++k) {
        if (dot(v[k], c) > dot(v[best], c)) best = k;
      }
      const double tol = 1e-12 * norm(c) * norm(v[best]);
      const std::size_t next = (best + 1) % n;
      const std::size_t prev = (best + n - 1) % n;
      // Ties are broken in the direction the covector rotates (CCW for gamma > 0).
      if (dot(v[best], c) - dot(v[next], c) <= tol) {
        m[i] = gamma_ > 0 ? static_cast<int>(next) : gamma_ < 0 ? static_cast<int>(best) : -1 - static_cast<int>(best);
      } else if (dot(v[best], c) - dot(v[prev], c) <= tol) {
        m[i] = gamma_ > 0 ? static_cast<int>(best) : gamma_ < 0 ? static_cast<int>(prev) : -1 - static_cast<int>(prev);
      } else {
        m[i] = static_cast<int>(best);
      }
    }
    return m;
  }

  void controls(const PMPState& s, const Mode& mode, std::vector<double>& lambda, std::vector<Vec2>& u) const {
    const std::size_t n = set_.dim();
    std::vector<double> A(n);
    for (std::size_t i = 0; i < n; ++i) {
      A[i] = support(set_.body(i), s.hg[i]);
      const PolygonTables* poly = set_.body(i).polygon();
      if (poly != nullptr) {
        const auto& v = poly->vertices;
        if (mode[i] >= 0) {
          u[i] = v[static_cast<std::size_t>(mode[i])];
        } else {
          const auto e = static_cast<std::size_t>(-1 - mode[i]);
          u[i] = 0.5 * (v[e] + v[(e + 1) % v.size()]);
        }
      } else {
        u[i] = support_point(set_.body(i), s.hg[i]);
      }
    }
    const SubdiffFace face = sum_face_ ? *sum_face_ : xi_subdifferential(set_.outer(), A);
    lambda = default_lambda(face, A);
  }

  void rhs(const PMPState& s, const Mode& mode, PMPState& ds) const {
    const std::size_t n = set_.dim();
    std::vector<double> lambda;
    std::vector<Vec2> u(n);
    controls(s, mode, lambda, u);
    ds.xy.resize(n);
    ds.hg.resize(n);
    ds.z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 w = lambda[i] * u[i];
      ds.xy[i] = w;
      ds.z += 0.5 * cross(s.xy[i], w);
      ds.hg[i] = {-gamma_ * w.y, gamma_ * w.x};
    }
  }

  PMPState step(const PMPState& s, const Mode& mode, double h) const {
    PMPState k1, k2, k3, k4;
    rhs(s, mode, k1);
    rhs(axpy(s, k1, 0.5 * h), mode, k2);
    rhs(axpy(s, k2, 0.5 * h), mode, k3);
    rhs(axpy(s, k3, h), mode, k4);
    PMPState r = s;
    for (std::size_t i = 0; i < s.xy.size(); ++i) {
      r.xy[i] = s.xy[i] + (h / 6.0) * (k1.xy[i] + 2.0 * k2.xy[i] + 2.0 * k3.xy[i] + k4.xy[i]);
      r.hg[i] = s.hg[i] + (h / 6.0) * (k1.hg[i] + 2.0 * k2.hg[i] + 2.0 * k3.hg[i] + k4.hg[i]);
    }
    r.z = s.z + (h / 6.0) * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    return r;
  }

  // Integrates over dt, splitting at every mode switch; the rest of a step
  // after a switch is covered by kRefine sub-steps.
  void advance(PMPState& s, Mode& mode, double dt, bool refined = false) const {
    constexpr int kRefine = 64;
    double remaining = dt;
    for (int events = 0; remaining > 0.0; ++events) {
      PMPState trial = step(s, mode, remaining);
      Mode after = mode_at(trial);
      if (after == mode || events > 64) {
        s = std::move(trial);
        mode = std::move(after);
        return;
      }
      double lo = 0.0;
      double hi = remaining;
      for (int it = 0; it < 60 && hi - lo > 1e-15 * dt; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mode_at(step(s, mode, mid)) == mode) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      s = step(s, mode, hi);
      Mode next = mode_at(s);
      mode = (next == mode) ? after : next;
      remaining -= hi;
      if (!refined && remaining > 0.0) {
        for (int k = 0; k < kRefine; ++k) advance(s, mode, remaining / kRefine, true);
        return;
      }
    }
  }

 private:
  const VelocitySet& set_;
  double gamma_;
  std::optional<SubdiffFace> sum_face_;
  std::vector<bool> holder_;
};

}  // namespace

PMPControl pmp_control(const VelocitySet& set, std::span<const Vec2> hg) {
  const std::size_t n = set.dim();
  if (hg.size() != n) throw Error(ErrorCode::kDimensionMismatch, "covector dimension");
  PMPControl c;
  c.A.resize(n);
  c.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.A[i] = support(set.body(i), hg[i]);
    c.u[i] = support_point(set.body(i), hg[i]);
  }
  c.lambda = default_lambda(xi_subdifferential(set.outer(), c.A), c.A);
  return c;
}

double hamiltonian(const VelocitySet& set, const PMPState& state) {
  const PMPControl c = pmp_control(set, state.hg);
  double H = 0.0;
  for (std::size_t i = 0; i < set.dim(); ++i) H += c.lambda[i] * dot(state.hg[i], c.u[i]);
  return H;
}

PMPPath integrate_pmp(const VelocitySet& set, const PMPState& initial, double T, double step,
                      std::size_t record_every) {
  const std::size_t n = set.dim();
  if (initial.xy.size() != n || initial.hg.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "PMP state dimension differs from the velocity set");
  }
  if (!(step > 0.0) || !(T >= 0.0)) throw Error(ErrorCode::kDomainError, "need step > 0 and T >= 0");
  const bool zero = initial.gamma == 0.0 && std::all_of(initial.hg.begin(), initial.hg.end(), [](Vec2 c) {
                      return c.x == 0.0 && c.y == 0.0;
                    });
  if (zero) throw Error(ErrorCode::kZeroCovector, "h, g and gamma all vanish");
  if (record_every == 0) record_every = 1;

  FrozenSystem sys(set, initial.gamma);
  std::vector<double> A(n);
  for (std::size_t i = 0; i < n; ++i) A[i] = support(set.body(i), initial.hg[i]);
  sys.freeze_active(A);

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(T / step - 1e-9)));
  const double h = T / static_cast<double>(steps);
  PMPPath path;
  PMPState s = initial;
  Mode mode = sys.mode_at(s);
  path.times.push_back(0.0);
  path.states.push_back(s);
  for (std::size_t k = 1; k <= steps; ++k) {
    sys.advance(s, mode, h);
    if (k % record_every == 0 || k == steps) {
      path.times.push_back(h * static_cast<double>(k));
      path.states.push_back(s);
    }
  }
  return path;
}

PlanarPath shelupsky_integrate(double p, double T, double step) {
  if (!(p > 1.0)) throw Error(ErrorCode::kDomainError, "Shelupsky system needs p > 1");
  if (!(step > 0.0)) throw Error(ErrorCode::kDomainError, "step must be positive");
  auto f = [p](Vec2 v) -> Vec2 {
    auto sp = [p](double a) { return a == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(a), p - 1.0), a); };
    return {-sp(v.y), sp(v.x)};
  };
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(T / step - 1e-9)));
  const double h = T / static_cast<double>(steps);
  PlanarPath path;
  path.times.reserve(steps + 1);
  path.points.reserve(steps + 1);
  Vec2 v{1.0, 0.0};
  path.times.push_back(0.0);
  path.points.push_back(v);
  for (std::size_t k = 1; k <= steps; ++k) {
    const Vec2 k1 = f(v);
    const Vec2 k2 = f(v + 0.5 * h * k1);
    const Vec2 k3 = f(v + 0.5 * h * k2);
    const Vec2 k4 = f(v + h * k3);
    v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    path.times.push_back(h * static_cast<double>(k));
    path.points.push_back(v);
  }
  return path;
}

namespace {

struct Probe {
  const ConvexBody& body;
  Vec2 target_xy;
  double target_z;
  double T;
  std::size_t K;

  double dt() const { return T / static_cast<double>(K); }

  double error(std::span<const Vec2> w) const {
    Vec2 sum{};
    double z = 0.0;
    for (const Vec2& wk : w) {
      z += cross(sum, wk);
      sum = sum + wk;
    }
    const Vec2 dx = dt() * sum - target_xy;
    const double dz = 0.5 * dt() * dt() * z - target_z;
    return dot(dx, dx) + dz * dz;
  }

  // Coordinate descent over the K angles; returns the final squared error.
  double descend(std::vector<double>& theta) const {
    const double period = body.period();
    const double h = dt();
    std::vector<Vec2> w(K);
    for (std::size_t k = 0; k < K; ++k) w[k] = cos_sin(body, theta[k]);
    double err = error(w);
    constexpr int kGrid = 48;
    for (int sweep = 0; sweep < 400 && err > 1e-16; ++sweep) {
      const double before = err;
      for (std::size_t k = 0; k < K; ++k) {
        // With the other pieces fixed, x and z are affine in w_k.
        Vec2 before_k{}, after_k{};
        Vec2 rest{};
        double z_rest = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
          if (j == k) continue;
          z_rest += cross(rest, w[j]);
          rest = rest + w[j];
          if (j < k) before_k = before_k + w[j];
          if (j > k) after_k = after_k + w[j];
        }
        const Vec2 lever = before_k - after_k;
        auto objective = [&](double t) {
          const Vec2 wk = cos_sin(body, t);
          const Vec2 dx = h * (rest + wk) - target_xy;
          const double dz = 0.5 * h * h * (z_rest + cross(lever, wk)) - target_z;
          return dot(dx, dx) + dz * dz;
        };
        double best_t = theta[k];
        double best = objective(best_t);
        for (int g = 0; g < kGrid; ++g) {
          const double t = period * (g + 0.5) / kGrid;
          const double v = objective(t);
          if (v < best) {
            best = v;
            best_t = t;
          }
        }
        // Golden-section polish around the best grid point.
        double a = best_t - period / kGrid;
        double b = best_t + period / kGrid;
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - r * (b - a), d = a + r * (b - a);
        double fc = objective(c), fd = objective(d);
        for (int it = 0; it < 40; ++it) {
          if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = objective(c);
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = objective(d);
          }
        }
        const double t_star = fc < fd ? c : d;
        const double f_star = std::min(fc, fd);
        if (f_star < best) {
          best = f_star;
          best_t = t_star;
        }
        theta[k] = best_t;
        w[k] = cos_sin(body, best_t);
      }
      err = error(w);
      if (before - err <= 1e-12 * before) break;
    }
    return err;
  }
};

struct Attempt {
  double err = std::numeric_limits<double>::infinity();
  std::vector<double> theta;
};

Attempt best_attempt(const ConvexBody& body, const HPoint& target, double T, std::size_t K, std::size_t restarts,
                     std::uint64_t seed, const std::vector<double>& warm) {
  const Probe probe{body, target.xy[0], target.z, T, K};
  const double period = body.period();
  const std::size_t total = restarts + (warm.empty() ? 0 : 1);
  std::vector<Attempt> attempts(total);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < total; ++r) {
    std::vector<double> theta(K);
    if (r == restarts) {
      theta = warm;
    } else if (r == 0) {
      // One loop around the body, the shape of the isoperimetric optimum.
      for (std::size_t k = 0; k < K; ++k) theta[k] = period * (static_cast<double>(k) + 0.5) / static_cast<double>(K);
    } else if (r == 1) {
      const Vec2 xy = target.xy[0];
      const double t0 = (xy.x == 0.0 && xy.y == 0.0) ? 0.0 : angle_from_point(body, xy).theta;
      std::fill(theta.begin(), theta.end(), t0);
    } else {
      std::mt19937_64 rng(seed * 1000003u + r);
      std::uniform_real_distribution<double> u(0.0, period);
      for (double& t : theta) t = u(rng);
    }
    Attempt a;
    a.err = probe.descend(theta);
    a.theta = std::move(theta);
    attempts[r] = std::move(a);
  }
  Attempt best;
  for (auto& a : attempts) {
    if (a.err < best.err) best = std::move(a);
  }
  return best;
}

}  // namespace

HPoint piecewise_endpoint(const VelocitySet& set, std::span<const double> angles, double T) {
  if (set.dim() != 1) throw Error(ErrorCode::kDimensionUnsupported, "piecewise probe supports n = 1 only");
  const double dt = T / static_cast<double>(angles.size());
  HPoint q;
  q.xy.assign(1, Vec2{});
  for (double t : angles) {
    const Vec2 w = cos_sin(set.body(0), t);
    q.z += 0.5 * cross(q.xy[0], w) * dt;
    q.xy[0] = q.xy[0] + dt * w;
  }
  return q;
}

BruteForceResult brute_force_min_time(const VelocitySet& set, const HPoint& target, std::size_t K,
                                      std::size_t restarts, std::uint64_t seed) {
  if (set.dim() != 1 || target.xy.size() != 1) {
    throw Error(ErrorCode::kDimensionUnsupported, "brute-force probe supports n = 1 only");
  }
  if (K < 1 || K > 32) throw Error(ErrorCode::kDomainError, "K must lie in [1, 32]");
  if (restarts < 2) restarts = 2;
  const ConvexBody& body = set.body(0);
  const double tol2 = kEndpointTol * kEndpointTol;

  // x(T) = sum of K boundary vectors times T / K, so T >= mu(x1).
  double lo = minkowski_functional(body, target.xy[0]);
  double hi = std::max({lo, 1e-3, lo + std::sqrt(2.0 * body.period() * std::fabs(target.z))});
  Attempt found;
  for (int grow = 0; grow < 12; ++grow) {
    found = best_attempt(body, target, hi, K, restarts, seed, found.theta);
    if (found.err <= tol2) break;
    lo = hi;
    hi *= 2.0;
  }
  if (found.err > tol2) {
    return {hi, found.theta, std::sqrt(found.err)};
  }
  BruteForceResult result{hi, found.theta, std::sqrt(found.err)};
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    Attempt a = best_attempt(body, target, mid, K, restarts, seed, result.angles);
    if (a.err <= tol2) {
      hi = mid;
      result = {mid, std::move(a.theta), std::sqrt(a.err)};
    } else {
      lo = mid;
    }
  }
  return result;
}

Slopes finite_difference(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kDomainError, "finite difference step must be positive");
  const double f0 = f(x), fm = f(x - h), fp = f(x + h);
  return {(f0 - fm) / h, (fp - f0) / h, (fp - fm) / (2.0 * h)};
}

}  // namespace sfh
