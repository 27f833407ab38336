#include "sfh/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"

namespace sfh {
namespace {

[[noreturn]] void invariant(const std::string& what) { throw Error(ErrorCode::kSpecInvariantViolated, what); }

void validate_angle_schedule(const AngleSchedule& s, std::size_t i) {
  const std::string where = "theta_free[" + std::to_string(i) + "]";
  if (s.starts.empty() || s.starts.size() != s.values.size()) invariant(where + " is malformed");
  if (s.starts.front() != 0.0) invariant(where + " must start at t = 0");
  for (std::size_t j = 1; j < s.starts.size(); ++j) {
    if (!(s.starts[j] > s.starts[j - 1])) invariant(where + " starts must increase");
  }
  for (double v : s.values) {
    if (!std::isfinite(v)) invariant(where + " has a non-finite angle");
  }
}

}  // namespace

double default_free_angle(const ConvexBody& body, double theta0_polar) {
  return corresponding_angles(body.polar(), theta0_polar).midpoint();
}

Extremal::Extremal(VelocitySet set, ExtremalSpec spec) : set_(std::move(set)), spec_(std::move(spec)) {
  const std::size_t n = set_.dim();
  if (spec_.gamma < -1 || spec_.gamma > 1) invariant("gamma must be -1, 0 or 1");
  if (spec_.A.size() != n) throw Error(ErrorCode::kDimensionMismatch, "A has " + std::to_string(spec_.A.size()) +
                                                                           " entries for " + std::to_string(n) + " planes");
  if (spec_.theta0_polar.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "theta0_polar needs one entry per plane");
  }
  if (!spec_.theta_free.empty() && spec_.theta_free.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "theta_free needs one entry per plane");
  }
  for (double a : spec_.A) {
    if (!std::isfinite(a)) invariant("A must be finite");
  }
  support_ = xi_support(set_.outer(), spec_.A);
  if (spec_.gamma == 0 && support_ == 0.0) invariant("gamma and A must not vanish simultaneously");

  const SubdiffFace face = xi_subdifferential(set_.outer(), spec_.A);
  lambda_ = lambda_schedule(face, spec_.A, spec_.gamma, spec_.lambda ? &*spec_.lambda : nullptr);

  polars_.reserve(n);
  start_polar_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    polars_.push_back(set_.body(i).polar());
    if (spec_.A[i] > 0.0) {
      if (!std::isfinite(spec_.theta0_polar[i])) invariant("theta0_polar must be finite where A_i > 0");
      start_polar_[i] = cos_sin(polars_[i], spec_.theta0_polar[i]);
    }
  }

  const bool has_free = std::any_of(spec_.theta_free.begin(), spec_.theta_free.end(),
                                    [](const auto& s) { return s.has_value(); });
  if (spec_.gamma != 0) {
    if (has_free) invariant("theta_free applies to gamma = 0 only");
    return;
  }
  theta_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool given = !spec_.theta_free.empty() && spec_.theta_free[i].has_value();
    if (given) {
      const AngleSchedule& s = *spec_.theta_free[i];
      validate_angle_schedule(s, i);
      if (spec_.A[i] > 0.0) {
        for (double v : s.values) {
          if (pythagorean_value(set_.body(i), v, spec_.theta0_polar[i]) < 1.0 - kCorrespondenceTol) {
            invariant("theta_free[" + std::to_string(i) + "] value " + std::to_string(v) +
                      " does not correspond to theta0_polar");
          }
        }
      }
      theta_[i] = s;
    } else if (spec_.A[i] > 0.0) {
      theta_[i] = AngleSchedule::constant(default_free_angle(set_.body(i), spec_.theta0_polar[i]));
    } else {
      for (const auto& piece : lambda_.pieces()) {
        if (piece.value[i] != 0.0) {
          invariant("plane " + std::to_string(i + 1) + " moves with A_i = 0; supply theta_free for it");
        }
      }
      theta_[i] = AngleSchedule::constant(0.0);
    }
  }
}

std::vector<double> Extremal::theta_polar_at(double t) const {
  const std::size_t n = dim();
  std::vector<double> out(n, 0.0);
  const std::vector<double> integral = spec_.gamma != 0 ? lambda_.integral(t) : std::vector<double>(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (spec_.A[i] > 0.0) out[i] = spec_.theta0_polar[i] + spec_.gamma * integral[i] / spec_.A[i];
  }
  return out;
}

std::vector<double> Extremal::theta_at(double t) const {
  const std::size_t n = dim();
  if (spec_.gamma == 0) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = theta_[i].at(t);
    return out;
  }
  std::vector<double> out = theta_polar_at(t);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = spec_.A[i] > 0.0 ? corresponding_angles(polars_[i], out[i]).midpoint() : 0.0;
  }
  return out;
}

std::vector<Vec2> Extremal::control_at(double t) const {
  const std::vector<double> th = theta_at(t);
  std::vector<Vec2> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = cos_sin(set_.body(i), th[i]);
  return out;
}

std::vector<Vec2> Extremal::covector_at(double t) const {
  const std::vector<double> th = theta_polar_at(t);
  std::vector<Vec2> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    out[i] = spec_.A[i] > 0.0 ? spec_.A[i] * cos_sin(polars_[i], th[i]) : Vec2{};
  }
  return out;
}

HPoint Extremal::closed_form(double t) const {
  const std::size_t n = dim();
  const double g = spec_.gamma;
  const std::vector<double> integral = lambda_.integral(t);
  HPoint q;
  q.xy.assign(n, Vec2{});
  double twice_z = g * support_ * t;
  for (std::size_t i = 0; i < n; ++i) {
    const double A = spec_.A[i];
    if (A == 0.0) continue;
    const Vec2 c0 = start_polar_[i];
    const Vec2 c = cos_sin(polars_[i], spec_.theta0_polar[i] + g * integral[i] / A);
    q.xy[i] = {g * A * (c.y - c0.y), g * A * (c0.x - c.x)};
    twice_z += A * A * (c0.y * c.x - c0.x * c.y);
  }
  q.z = 0.5 * twice_z;
  return q;
}

void Extremal::advance(HPoint& q, double t0, double t1) const {
  if (!(t1 > t0)) return;
  const std::size_t n = dim();
  std::vector<double> cuts = lambda_.breakpoints(t0, t1);
  for (const AngleSchedule& s : theta_) {
    const auto b = s.breakpoints(t0, t1);
    cuts.insert(cuts.end(), b.begin(), b.end());
  }
  cuts.push_back(t1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double a = t0;
  for (double b : cuts) {
    const double mid = 0.5 * (a + b);
    const double dt = b - a;
    const std::vector<double> lam = lambda_.at(mid);
    double dz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lam[i] == 0.0) continue;
      const Vec2 w = lam[i] * cos_sin(set_.body(i), theta_[i].at(mid));
      dz += cross(q.xy[i], w);
      q.xy[i] = q.xy[i] + dt * w;
    }
    q.z += 0.5 * dz * dt;
    a = b;
  }
}

HPoint Extremal::state(double t) const {
  if (spec_.gamma != 0) return closed_form(t);
  HPoint q;
  q.xy.assign(dim(), Vec2{});
  advance(q, 0.0, t);
  return q;
}

Trajectory synthesize(const VelocitySet& set, const ExtremalSpec& spec, double T, std::size_t n_samples) {
  if (!(T >= 0.0) || !std::isfinite(T)) invariant("horizon T must be finite and nonnegative");
  if (n_samples < 2) throw Error(ErrorCode::kTooFewSamples, "synthesize needs at least 2 samples");
  const Extremal ext(set, spec);
  Trajectory traj;
  traj.times.resize(n_samples);
  traj.states.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    traj.times[k] = T * static_cast<double>(k) / static_cast<double>(n_samples - 1);
  }
  if (spec.gamma != 0) {
    for (std::size_t k = 0; k < n_samples; ++k) traj.states[k] = ext.state(traj.times[k]);
  } else {
    HPoint q;
    q.xy.assign(set.dim(), Vec2{});
    traj.states[0] = q;
    for (std::size_t k = 1; k < n_samples; ++k) {
      ext.advance(q, traj.times[k - 1], traj.times[k]);
      traj.states[k] = q;
    }
  }
  traj.spec = spec;
  traj.set = set;
  return traj;
}

HPoint endpoint(const VelocitySet& set, const ExtremalSpec& spec, double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) invariant("horizon T must be finite and nonnegative");
  return Extremal(set, spec).state(T);
}

namespace {

void require_samples(const Trajectory& traj) {
  if (traj.times.size() < 3 || traj.states.size() != traj.times.size()) {
    throw Error(ErrorCode::kTooFewSamples, "need at least 3 samples");
  }
}

}  // namespace

double check_horizontality(const Trajectory& traj) {
  require_samples(traj);
  const std::size_t n = traj.dim();
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k - 1];
    const HPoint& a = traj.states[k - 1];
    const HPoint& b = traj.states[k + 1];
    const HPoint& c = traj.states[k];
    double form = 0.0;
    for (std::size_t i = 0; i < n; ++i) form += cross(c.xy[i], (b.xy[i] - a.xy[i]) / dt);
    worst = std::max(worst, std::fabs((b.z - a.z) / dt - 0.5 * form));
  }
  return worst;
}

double check_unit_speed(const VelocitySet& set, const Trajectory& traj) {
  require_samples(traj);
  const std::size_t n = traj.dim();
  if (n != set.dim()) throw Error(ErrorCode::kDimensionMismatch, "trajectory and velocity set differ in dimension");
  double worst = 0.0;
  std::vector<Vec2> v(n);
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k - 1];
    for (std::size_t i = 0; i < n; ++i) v[i] = (traj.states[k + 1].xy[i] - traj.states[k - 1].xy[i]) / dt;
    worst = std::max(worst, std::fabs(membership(set, v) - 1.0));
  }
  return worst;
}

double swept_area(const Trajectory& traj, std::size_t i, double t) {
  if (traj.times.empty()) throw Error(ErrorCode::kTooFewSamples, "empty trajectory");
  if (i >= traj.dim()) throw Error(ErrorCode::kDimensionMismatch, "plane index out of range");
  // Areas are swept from the orbit centre, where the radius vector turns at
  // a constant areal rate; without generating data the origin is used.
  Vec2 centre{};
  if (traj.spec) {
    const ExtremalSpec& s = *traj.spec;
    if (s.gamma == 0) throw Error(ErrorCode::kNotApplicable, "swept area needs gamma != 0");
    if (s.A[i] == 0.0) throw Error(ErrorCode::kNotApplicable, "swept area needs A_i > 0");
    if (traj.set) {
      const Vec2 c0 = cos_sin(traj.set->body(i).polar(), s.theta0_polar[i]);
      centre = (s.gamma * s.A[i]) * Vec2{-c0.y, c0.x};
    }
  }
  if (t > traj.times.back() * (1.0 + 1e-12)) throw Error(ErrorCode::kDomainError, "t beyond the sampled horizon");
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double t0 = traj.times[k];
    const double t1 = traj.times[k + 1];
    if (t0 >= t) break;
    const Vec2 p0 = traj.states[k].xy[i] - centre;
    Vec2 p1 = traj.states[k + 1].xy[i] - centre;
    if (t1 > t) p1 = p0 + (t - t0) / (t1 - t0) * (p1 - p0);
    area += 0.5 * cross(p0, p1);
  }
  return area;
}

}  // namespace sfh
