#include <cmath>
#include <random>

#include "doctest.h"
#include "sfh/error.hpp"
#include "sfh/lp_special.hpp"
#include "sfh/velocity_set.hpp"
#include "support.hpp"

using namespace sfh;

namespace {

std::vector<OuterNorm> outer_zoo(std::size_t n) {
  std::vector<double> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(0.5 + 0.7 * static_cast<double>(i));
  return {OuterNorm::sum(), OuterNorm::max(), OuterNorm::power(1.7), OuterNorm::power(3.0),
          OuterNorm::weighted_euclid(a)};
}

// A random member of the face.
std::vector<double> sample_face(const SubdiffFace& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> l;
  switch (f.kind) {
    case SubdiffFace::Kind::kSingleton: return f.point;
    case SubdiffFace::Kind::kSimplex: {
      double total = 0;
      for (bool a : f.active) {
        l.push_back(a ? -std::log(u(rng) + 1e-300) : 0.0);
        total += l.back();
      }
      for (double& v : l) v /= total;
      return l;
    }
    case SubdiffFace::Kind::kBox:
      for (bool a : f.active) l.push_back(a ? 1.0 : u(rng));
      return l;
  }
  return l;
}

}  // namespace

TEST_CASE("membership examples") {
  const std::vector<ConvexBody> discs(3, disc(1));
  const VelocitySet pw(discs, OuterNorm::power(3.0));
  const Vec2 zero[3] = {};
  CHECK(membership(pw, zero) == 0.0);
  const double r = std::pow(3.0, -1.0 / 3.0);
  const Vec2 v[3] = {{r, 0}, {0, r}, {-r * 0.6, r * 0.8}};
  CHECK(membership(pw, v) == doctest::Approx(1.0).epsilon(1e-14));
  const VelocitySet mx({sfh::testing::diamond(), disc(2)}, OuterNorm::max());
  const Vec2 w[2] = {{0.5, 0.5}, {0, -2}};
  CHECK(membership(mx, w) == doctest::Approx(1.0));
  const Vec2 wrong[1] = {{1, 0}};
  CHECK_THROWS_AS(membership(mx, wrong), Error);
}

TEST_CASE("xi_support examples") {
  const double A[] = {3, 1};
  CHECK(xi_support(OuterNorm::sum(), A) == 3.0);
  CHECK(xi_support(OuterNorm::max(), A) == 4.0);
  const double B[] = {1, 1};
  CHECK(xi_support(OuterNorm::weighted_euclid({1, 2}), B) == doctest::Approx(std::sqrt(5.0)));
  CHECK(xi_support(OuterNorm::power(2.0), std::vector<double>{3, 4}) == doctest::Approx(5.0));
  const double neg[] = {1, -1};
  try {
    xi_support(OuterNorm::sum(), neg);
    FAIL("expected NegativeComponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegativeComponent);
  }
}

TEST_CASE("xi_subdifferential examples") {
  const SubdiffFace s = xi_subdifferential(OuterNorm::sum(), std::vector<double>{2, 2});
  CHECK(s.kind == SubdiffFace::Kind::kSimplex);
  CHECK(s.active == std::vector<bool>{true, true});
  const SubdiffFace p = xi_subdifferential(OuterNorm::power(2.0), std::vector<double>{3, 4});
  REQUIRE(p.kind == SubdiffFace::Kind::kSingleton);
  CHECK(p.point[0] == doctest::Approx(0.6));
  CHECK(p.point[1] == doctest::Approx(0.8));
  const SubdiffFace m = xi_subdifferential(OuterNorm::max(), std::vector<double>{1, 0});
  CHECK(m.kind == SubdiffFace::Kind::kBox);
  CHECK(m.active == std::vector<bool>{true, false});
  CHECK(m.contains(std::vector<double>{1, 0.3}, 1e-10));
  CHECK(!m.contains(std::vector<double>{0.9, 0.3}, 1e-10));
  const SubdiffFace z = xi_subdifferential(OuterNorm::sum(), std::vector<double>{0, 0});
  CHECK(z.degenerate);
}

TEST_CASE("support / subdifferential consistency") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t n : {1u, 2u, 3u, 4u}) {
    for (const OuterNorm& outer : outer_zoo(n)) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> A(n);
        for (double& a : A) a = u(rng) < 0.2 ? 0.0 : 3 * u(rng);
        if (trial % 5 == 0) A.assign(n, 1.5);  // ties
        if (std::all_of(A.begin(), A.end(), [](double a) { return a == 0; })) A[0] = 1.0;
        const double s = xi_support(outer, A);
        const SubdiffFace face = xi_subdifferential(outer, A);
        for (int k = 0; k < 100; ++k) {
          const std::vector<double> l = sample_face(face, rng);
          CHECK(face.contains(l, 1e-10));
          CHECK(outer(l) <= 1.0 + 1e-10);
          double dotp = 0;
          for (std::size_t i = 0; i < n; ++i) dotp += A[i] * l[i];
          CHECK(std::fabs(dotp - s) <= 1e-10 * std::max(1.0, s));
        }
        int accepted = 0;
        while (accepted < 100) {
          std::vector<double> xi(n);
          for (double& v : xi) v = 2.5 * u(rng);
          if (outer(xi) > 1.0) continue;
          ++accepted;
          double dotp = 0;
          for (std::size_t i = 0; i < n; ++i) dotp += A[i] * xi[i];
          CHECK(dotp <= s + 1e-10);
        }
        // homogeneity
        std::vector<double> cA = A;
        for (double& v : cA) v *= 2.75;
        CHECK(xi_support(outer, cA) == doctest::Approx(2.75 * s).epsilon(1e-13));
        const SubdiffFace f2 = xi_subdifferential(outer, cA);
        CHECK(f2.kind == face.kind);
        CHECK(f2.active == face.active);
        for (std::size_t i = 0; i < face.point.size(); ++i) CHECK(f2.point[i] == doctest::Approx(face.point[i]));
        // strict convexity / monotonicity specializations
        if (outer.kind() == OuterNorm::Kind::kPower || outer.kind() == OuterNorm::Kind::kWeightedEuclid) {
          CHECK(face.kind == SubdiffFace::Kind::kSingleton);
          for (std::size_t i = 0; i < n; ++i) {
            if (A[i] == 0.0) CHECK(face.point[i] == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("PowerP subdifferential matches the closed form") {
  const double p = 3.0, q = lp::conjugate_exponent(p);
  const std::vector<double> A{0.5, 2.0, 1.25};
  double alpha = 0;
  for (double a : A) alpha += std::pow(a, q);
  alpha = std::pow(alpha, 1 / q);
  const SubdiffFace f = xi_subdifferential(OuterNorm::power(p), A);
  for (std::size_t i = 0; i < A.size(); ++i) {
    CHECK(f.point[i] == doctest::Approx(std::pow(A[i], q - 1) * std::pow(alpha, -q / p)).epsilon(1e-13));
  }
  CHECK(OuterNorm::power(p)(f.point) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("lambda_schedule") {
  const std::vector<double> A2{2, 2};
  const SubdiffFace single = xi_subdifferential(OuterNorm::power(2.0), A2);
  const LambdaSchedule s = lambda_schedule(single, A2, 1);
  CHECK(s.is_constant());
  CHECK(s.at(7.0)[0] == doctest::Approx(std::sqrt(0.5)));

  const SubdiffFace simplex = xi_subdifferential(OuterNorm::sum(), A2);
  const LambdaSchedule alt({{0.0, {1.0, 0.0}}, {1.0, {0.0, 1.0}}}, 2.0);
  const LambdaSchedule ok = lambda_schedule(simplex, A2, 1, &alt);
  CHECK(ok.at(0.5) == std::vector<double>{1.0, 0.0});
  CHECK(ok.at(1.5) == std::vector<double>{0.0, 1.0});
  CHECK(ok.at(2.5) == std::vector<double>{1.0, 0.0});
  const auto I = ok.integral(5.5);
  CHECK(I[0] == doctest::Approx(3.0));
  CHECK(I[1] == doctest::Approx(2.5));
  CHECK(ok.breakpoints(0.0, 3.0) == std::vector<double>{1.0, 2.0});

  const std::vector<double> A3{3, 1};
  const SubdiffFace only1 = xi_subdifferential(OuterNorm::sum(), A3);
  const LambdaSchedule bad = LambdaSchedule::constant({0.5, 0.5});
  try {
    lambda_schedule(only1, A3, 1, &bad);
    FAIL("expected ValueOutsideFace");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kValueOutsideFace);
  }
  const std::vector<double> A4{1, 0};
  const SubdiffFace box = xi_subdifferential(OuterNorm::max(), A4);
  const LambdaSchedule side = LambdaSchedule::constant({1.0, 0.4});
  CHECK_NOTHROW(lambda_schedule(box, A4, 0, &side));
  try {
    lambda_schedule(box, A4, -1, &side);
    FAIL("expected SideConditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSideConditionViolated);
  }
  // default pins A_i = 0 coordinates at zero
  CHECK(lambda_schedule(box, A4, 1).at(0) == std::vector<double>{1.0, 0.0});
}
