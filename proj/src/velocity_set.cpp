#include "sfh/velocity_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sfh/error.hpp"
#include "sfh/lp_special.hpp"

namespace sfh {
namespace {

void require_nonnegative(std::span<const double> A) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!(A[i] >= 0.0)) throw Error(ErrorCode::kNegativeComponent, "A[" + std::to_string(i) + "] < 0");
  }
}

bool all_zero(std::span<const double> A) {
  return std::all_of(A.begin(), A.end(), [](double a) { return a == 0.0; });
}

}  // namespace

OuterNorm OuterNorm::power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::kDomainError, "power outer norm needs 1 < p < inf");
  return OuterNorm(Kind::kPower, p, {});
}

OuterNorm OuterNorm::weighted_euclid(std::vector<double> a) {
  for (double w : a) {
    if (!(w > 0.0)) throw Error(ErrorCode::kDomainError, "weighted Euclidean weights must be positive");
  }
  return OuterNorm(Kind::kWeightedEuclid, 2.0, std::move(a));
}

double OuterNorm::operator()(std::span<const double> lambda) const {
  switch (kind_) {
    case Kind::kSum: return std::accumulate(lambda.begin(), lambda.end(), 0.0);
    case Kind::kMax: return lambda.empty() ? 0.0 : *std::max_element(lambda.begin(), lambda.end());
    case Kind::kPower: {
      double m = 0.0;
      for (double l : lambda) m = std::max(m, l);
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double l : lambda) s += std::pow(l / m, p_);
      return m * std::pow(s, 1.0 / p_);
    }
    case Kind::kWeightedEuclid: {
      double s = 0.0;
      for (std::size_t i = 0; i < lambda.size(); ++i) s += (lambda[i] / a_[i]) * (lambda[i] / a_[i]);
      return std::sqrt(s);
    }
  }
  return 0.0;
}

VelocitySet::VelocitySet(std::vector<ConvexBody> bodies, OuterNorm outer)
    : bodies_(std::move(bodies)), outer_(std::move(outer)) {
  if (bodies_.empty()) throw Error(ErrorCode::kDimensionMismatch, "velocity set needs at least one plane");
  if (outer_.kind() == OuterNorm::Kind::kWeightedEuclid && outer_.weights().size() != bodies_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "weighted Euclidean norm needs one weight per plane");
  }
}

double membership(const VelocitySet& set, std::span<const Vec2> velocity) {
  if (velocity.size() != set.dim()) throw Error(ErrorCode::kDimensionMismatch, "velocity dimension");
  std::vector<double> gauges(set.dim());
  for (std::size_t i = 0; i < set.dim(); ++i) gauges[i] = minkowski_functional(set.body(i), velocity[i]);
  return set.outer()(gauges);
}

double xi_support(const OuterNorm& outer, std::span<const double> A) {
  require_nonnegative(A);
  switch (outer.kind()) {
    case OuterNorm::Kind::kSum: return A.empty() ? 0.0 : *std::max_element(A.begin(), A.end());
    case OuterNorm::Kind::kMax: return std::accumulate(A.begin(), A.end(), 0.0);
    case OuterNorm::Kind::kPower: {
      const double q = lp::conjugate_exponent(outer.exponent());
      double m = 0.0;
      for (double a : A) m = std::max(m, a);
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double a : A) s += std::pow(a / m, q);
      return m * std::pow(s, 1.0 / q);
    }
    case OuterNorm::Kind::kWeightedEuclid: {
      const auto& w = outer.weights();
      if (w.size() != A.size()) throw Error(ErrorCode::kDimensionMismatch, "weights vs A");
      double s = 0.0;
      for (std::size_t i = 0; i < A.size(); ++i) s += w[i] * w[i] * A[i] * A[i];
      return std::sqrt(s);
    }
  }
  return 0.0;
}

SubdiffFace xi_subdifferential(const OuterNorm& outer, std::span<const double> A) {
  require_nonnegative(A);
  const std::size_t n = A.size();
  SubdiffFace face;
  face.degenerate = all_zero(A);
  switch (outer.kind()) {
    case OuterNorm::Kind::kSum: {
      face.kind = SubdiffFace::Kind::kSimplex;
      const double top = n ? *std::max_element(A.begin(), A.end()) : 0.0;
      face.active.resize(n);
      for (std::size_t i = 0; i < n; ++i) face.active[i] = A[i] >= top - 1e-12 * top;
      break;
    }
    case OuterNorm::Kind::kMax: {
      face.kind = SubdiffFace::Kind::kBox;
      face.active.resize(n);
      for (std::size_t i = 0; i < n; ++i) face.active[i] = A[i] > 0.0;
      break;
    }
    case OuterNorm::Kind::kPower: {
      face.kind = SubdiffFace::Kind::kSingleton;
      face.point.assign(n, 0.0);
      const double alpha = xi_support(outer, A);
      if (alpha > 0.0) {
        const double q = lp::conjugate_exponent(outer.exponent());
        // A_i^{q-1} alpha^{-q/p} == (A_i / alpha)^{q-1} since q/p == q - 1.
        for (std::size_t i = 0; i < n; ++i) face.point[i] = A[i] > 0.0 ? std::pow(A[i] / alpha, q - 1.0) : 0.0;
      }
      break;
    }
    case OuterNorm::Kind::kWeightedEuclid: {
      face.kind = SubdiffFace::Kind::kSingleton;
      face.point.assign(n, 0.0);
      const double alpha = xi_support(outer, A);
      const auto& w = outer.weights();
      if (alpha > 0.0) {
        for (std::size_t i = 0; i < n; ++i) face.point[i] = w[i] * w[i] * A[i] / alpha;
      }
      break;
    }
  }
  return face;
}

bool SubdiffFace::contains(std::span<const double> lambda, double tol) const {
  if (lambda.size() != dim()) return false;
  switch (kind) {
    case Kind::kSingleton:
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (std::fabs(lambda[i] - point[i]) > tol) return false;
      }
      return true;
    case Kind::kSimplex: {
      double total = 0.0;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < -tol) return false;
        if (!active[i] && std::fabs(lambda[i]) > tol) return false;
        total += lambda[i];
      }
      return std::fabs(total - 1.0) <= tol;
    }
    case Kind::kBox:
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (active[i]) {
          if (std::fabs(lambda[i] - 1.0) > tol) return false;
        } else if (lambda[i] < -tol || lambda[i] > 1.0 + tol) {
          return false;
        }
      }
      return true;
  }
  return false;
}

std::vector<double> SubdiffFace::barycenter() const {
  switch (kind) {
    case Kind::kSingleton: return point;
    case Kind::kSimplex: {
      const auto count = static_cast<double>(std::count(active.begin(), active.end(), true));
      std::vector<double> out(active.size(), 0.0);
      for (std::size_t i = 0; i < active.size(); ++i) out[i] = active[i] ? 1.0 / count : 0.0;
      return out;
    }
    case Kind::kBox: {
      std::vector<double> out(active.size(), 0.5);
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i]) out[i] = 1.0;
      }
      return out;
    }
  }
  return {};
}

LambdaSchedule::LambdaSchedule(std::vector<Piece> pieces, double repeat_period)
    : pieces_(std::move(pieces)), repeat_(repeat_period) {
  if (pieces_.empty()) throw Error(ErrorCode::kSpecInvariantViolated, "lambda schedule has no pieces");
  if (pieces_.front().start != 0.0) throw Error(ErrorCode::kSpecInvariantViolated, "lambda schedule must start at t = 0");
  const std::size_t n = pieces_.front().value.size();
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (pieces_[j].value.size() != n) throw Error(ErrorCode::kDimensionMismatch, "lambda pieces differ in size");
    if (j > 0 && !(pieces_[j].start > pieces_[j - 1].start)) {
      throw Error(ErrorCode::kSpecInvariantViolated, "lambda piece starts must increase");
    }
  }
  if (repeat_ < 0.0 || (repeat_ > 0.0 && !(repeat_ > pieces_.back().start))) {
    throw Error(ErrorCode::kSpecInvariantViolated, "repeat period must exceed the last piece start");
  }
}

LambdaSchedule LambdaSchedule::constant(std::vector<double> value) {
  return LambdaSchedule({Piece{0.0, std::move(value)}}, 0.0);
}

std::vector<double> LambdaSchedule::at(double t) const {
  if (repeat_ > 0.0) t = std::fmod(t, repeat_);
  std::size_t j = 0;
  while (j + 1 < pieces_.size() && pieces_[j + 1].start <= t) ++j;
  return pieces_[j].value;
}

std::vector<double> LambdaSchedule::integral_within_period(double t) const {
  const std::size_t n = dim();
  std::vector<double> acc(n, 0.0);
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const double a = pieces_[j].start;
    if (t <= a) break;
    const double b = (j + 1 < pieces_.size()) ? std::min(t, pieces_[j + 1].start) : t;
    for (std::size_t i = 0; i < n; ++i) acc[i] += pieces_[j].value[i] * (b - a);
  }
  return acc;
}

std::vector<double> LambdaSchedule::integral(double t) const {
  if (t <= 0.0) return std::vector<double>(dim(), 0.0);
  if (repeat_ <= 0.0) return integral_within_period(t);
  const double cycles = std::floor(t / repeat_);
  const std::vector<double> full = integral_within_period(repeat_);
  std::vector<double> rest = integral_within_period(t - cycles * repeat_);
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += cycles * full[i];
  return rest;
}

std::vector<double> LambdaSchedule::breakpoints(double t0, double t1) const {
  std::vector<double> out;
  if (pieces_.size() == 1 && repeat_ <= 0.0) return out;
  if (repeat_ <= 0.0) {
    for (std::size_t j = 1; j < pieces_.size(); ++j) {
      if (pieces_[j].start > t0 && pieces_[j].start < t1) out.push_back(pieces_[j].start);
    }
    return out;
  }
  for (double base = std::floor(t0 / repeat_) * repeat_; base < t1; base += repeat_) {
    for (const Piece& piece : pieces_) {
      const double s = base + piece.start;
      if (s > t0 && s < t1) out.push_back(s);
    }
  }
  return out;
}

std::vector<double> default_lambda(const SubdiffFace& face, std::span<const double> A) {
  std::vector<double> lambda = face.barycenter();
  if (face.degenerate) {
    std::fill(lambda.begin(), lambda.end(), 0.0);
    return lambda;
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (A[i] == 0.0) lambda[i] = 0.0;
  }
  return lambda;
}

LambdaSchedule lambda_schedule(const SubdiffFace& face, std::span<const double> A, int gamma,
                               const LambdaSchedule* user) {
  if (user == nullptr) return LambdaSchedule::constant(default_lambda(face, A));
  if (user->dim() != face.dim()) throw Error(ErrorCode::kDimensionMismatch, "lambda schedule dimension");
  for (const auto& piece : user->pieces()) {
    if (!face.degenerate && !face.contains(piece.value, kFaceTol)) {
      throw Error(ErrorCode::kValueOutsideFace, "lambda piece at t = " + std::to_string(piece.start) +
                                                    " is outside the subdifferential face");
    }
    if (gamma != 0) {
      for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i] == 0.0 && std::fabs(piece.value[i]) > kFaceTol) {
          throw Error(ErrorCode::kSideConditionViolated,
                      "lambda_" + std::to_string(i + 1) + " must vanish when A_i = 0 and gamma != 0");
        }
      }
    }
  }
  return *user;
}

}  // namespace sfh
