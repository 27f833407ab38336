#pragma once

// The control set U = {v : mu(mu_1(v_1), ..., mu_n(v_n)) <= 1} built from n
// planar bodies and an outer norm, together with the set
// Xi = {lambda >= 0 : mu(lambda) <= 1}, its support function and the exact
// faces of its subdifferential.

#include <cstddef>
#include <span>
#include <vector>

#include "sfh/convex_body.hpp"

namespace sfh {

class OuterNorm {
 public:
  enum class Kind { kSum, kMax, kPower, kWeightedEuclid };

  static OuterNorm sum() { return OuterNorm(Kind::kSum, 1.0, {}); }
  static OuterNorm max() { return OuterNorm(Kind::kMax, 1.0, {}); }
  static OuterNorm power(double p);
  /// mu(lambda) = (sum lambda_i^2 / a_i^2)^{1/2}.
  static OuterNorm weighted_euclid(std::vector<double> a);

  Kind kind() const { return kind_; }
  double exponent() const { return p_; }
  const std::vector<double>& weights() const { return a_; }

  /// mu on the nonnegative orthant.
  double operator()(std::span<const double> lambda) const;

 private:
  OuterNorm(Kind kind, double p, std::vector<double> a) : kind_(kind), p_(p), a_(std::move(a)) {}

  Kind kind_;
  double p_;
  std::vector<double> a_;
};

class VelocitySet {
 public:
  VelocitySet(std::vector<ConvexBody> bodies, OuterNorm outer);

  std::size_t dim() const { return bodies_.size(); }
  const std::vector<ConvexBody>& bodies() const { return bodies_; }
  const ConvexBody& body(std::size_t i) const { return bodies_[i]; }
  const OuterNorm& outer() const { return outer_; }

 private:
  std::vector<ConvexBody> bodies_;
  OuterNorm outer_;
};

/// mu(mu_{Omega_1}(v_1), ..., mu_{Omega_n}(v_n)); <= 1 iff v is admissible.
double membership(const VelocitySet& set, std::span<const Vec2> velocity);

/// Support function of Xi on the nonnegative orthant. Throws NegativeComponent.
double xi_support(const OuterNorm& outer, std::span<const double> A);

/// The subdifferential of s_Xi at A, described exactly.
struct SubdiffFace {
  enum class Kind { kSingleton, kSimplex, kBox };

  Kind kind = Kind::kSingleton;
  std::vector<double> point;  // kSingleton
  std::vector<bool> active;   // kSimplex: support indices; kBox: coordinates pinned at 1
  bool degenerate = false;    // A == 0

  std::size_t dim() const { return kind == Kind::kSingleton ? point.size() : active.size(); }
  bool contains(std::span<const double> lambda, double tol) const;
  std::vector<double> barycenter() const;
};

SubdiffFace xi_subdifferential(const OuterNorm& outer, std::span<const double> A);

/// Piecewise-constant lambda(t); pieces[0].start must be 0. With a positive
/// repeat period the schedule restarts every period.
class LambdaSchedule {
 public:
  struct Piece {
    double start = 0.0;
    std::vector<double> value;
  };

  LambdaSchedule() = default;
  LambdaSchedule(std::vector<Piece> pieces, double repeat_period = 0.0);
  static LambdaSchedule constant(std::vector<double> value);

  const std::vector<Piece>& pieces() const { return pieces_; }
  double repeat_period() const { return repeat_; }
  std::size_t dim() const { return pieces_.empty() ? 0 : pieces_.front().value.size(); }
  bool is_constant() const { return pieces_.size() == 1; }

  std::vector<double> at(double t) const;
  /// Exact int_0^t lambda.
  std::vector<double> integral(double t) const;
  /// Piece boundaries strictly inside (t0, t1), ascending.
  std::vector<double> breakpoints(double t0, double t1) const;

 private:
  std::vector<double> integral_within_period(double t) const;

  std::vector<Piece> pieces_;
  double repeat_ = 0.0;
};

/// lambda for a face: coordinates with A_i == 0 are pinned at zero, the
/// rest sit at the face barycenter.
std::vector<double> default_lambda(const SubdiffFace& face, std::span<const double> A);

/// Validates a user schedule against the face and the side condition
/// (A_i == 0 and gamma != 0 forces lambda_i == 0), or builds the default.
/// Throws ValueOutsideFace or SideConditionViolated.
LambdaSchedule lambda_schedule(const SubdiffFace& face, std::span<const double> A, int gamma,
                               const LambdaSchedule* user = nullptr);

inline constexpr double kFaceTol = 1e-10;

}  // namespace sfh
