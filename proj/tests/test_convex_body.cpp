#include <cmath>
#include <random>

#include "doctest.h"
#include "sfh/convex_body.hpp"
#include "sfh/error.hpp"
#include "support.hpp"

using namespace sfh;
using sfh::testing::diamond;
using sfh::testing::kPi;
using sfh::testing::unit_square;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an sfh::Error");
  return ErrorCode::kConfig;
}

}  // namespace

TEST_CASE("polygon_from_vertices: examples") {
  CHECK(area(unit_square()) == 4.0);
  CHECK(area(diamond()) == 2.0);
  const Vec2 bad[] = {{1, 0}, {0, 1}, {-0.1, 0.05}};
  CHECK(code_of([&] { polygon_from_vertices(bad); }) == ErrorCode::kOriginNotInterior);
}

TEST_CASE("polygon_from_vertices: normalization and rejection") {
  const Vec2 cw[] = {{1, -1}, {-1, -1}, {-1, 1}, {1, 1}};
  const ConvexBody sq = polygon_from_vertices(cw);
  CHECK(area(sq) == 4.0);
  const Vec2 collinear[] = {{1, 0}, {0.5, 0.5}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(polygon_from_vertices(collinear).polygon()->vertices.size() == 4);
  const Vec2 two[] = {{1, 0}, {0, 1}};
  CHECK(code_of([&] { polygon_from_vertices(two); }) == ErrorCode::kDegenerateInput);
  const Vec2 dup[] = {{1, 0}, {0, 1}, {0, 1}, {-1, -1}};
  CHECK(code_of([&] { polygon_from_vertices(dup); }) == ErrorCode::kDegenerateInput);
  const Vec2 flat[] = {{1, 0}, {2, 0}, {3, 0}};
  CHECK(code_of([&] { polygon_from_vertices(flat); }) == ErrorCode::kDegenerateInput);
  const Vec2 reflex[] = {{1, 0}, {0.2, 0.2}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(code_of([&] { polygon_from_vertices(reflex); }) == ErrorCode::kNotConvex);
  const Vec2 edge_origin[] = {{1, 0}, {0, 1}, {-1, 0}};
  CHECK(code_of([&] { polygon_from_vertices(edge_origin); }) == ErrorCode::kOriginNotInterior);
}

TEST_CASE("support and minkowski functional: examples") {
  CHECK(support(disc(1), {3, 4}) == doctest::Approx(5.0));
  CHECK(support(diamond(), {1, 1}) == doctest::Approx(1.0));
  // dual norm with q = 4/3: (1 + 1)^{3/4}
  CHECK(support(lp_ball(4), {1, 1}) == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-14));
  CHECK(minkowski_functional(disc(1), {0.3, 0.4}) == doctest::Approx(0.5));
  CHECK(minkowski_functional(diamond(), {0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(minkowski_functional(lp_ball(4), {1, 1}) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
  // dense boundary sampling of the L_4 ball for its support value
  const ConvexBody b = lp_ball(4);
  double best = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const Vec2 x = boundary_point_at_area(b, b.period() * k / 20000.0);
    best = std::max(best, x.x + x.y);
  }
  CHECK(best == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-6));
}

TEST_CASE("polar: examples and bipolarity") {
  const ConvexBody sq = polar(diamond());
  CHECK(area(sq) == 4.0);
  for (const Vec2 v : {Vec2{1, 1}, Vec2{-1, 1}, Vec2{-1, -1}, Vec2{1, -1}}) {
    CHECK(minkowski_functional(sq, v) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(std::get<DiscShape>(polar(disc(1)).shape()).radius == 1.0);
  CHECK(std::get<DiscShape>(polar(disc(2)).shape()).radius == 0.5);
  CHECK(std::get<LpShape>(polar(lp_ball(4)).shape()).p == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const ConvexBody b = sfh::testing::random_polygon(rng);
    const ConvexBody bb = polar(polar(b));
    const auto& v0 = b.polygon()->vertices;
    const auto& v1 = bb.polygon()->vertices;
    REQUIRE(v0.size() == v1.size());
    for (std::size_t i = 0; i < v0.size(); ++i) {
      CHECK(norm(v0[i] - v1[i]) <= 1e-12);
    }
    // Rebuilding the polygon from the dual normals gives the same vertices.
    const auto& normals = polar(b).polygon()->normals;
    const ConvexBody rebuilt = polygon_from_vertices(normals);
    const auto& v2 = rebuilt.polygon()->vertices;
    REQUIRE(v2.size() == v0.size());
    double worst = 1e9;
    for (std::size_t shift = 0; shift < v0.size(); ++shift) {
      double d = 0.0;
      for (std::size_t i = 0; i < v0.size(); ++i) d = std::max(d, norm(v0[i] - v2[(i + shift) % v0.size()]));
      worst = std::min(worst, d);
    }
    CHECK(worst <= 1e-12);
  }
  const ConvexBody e = ellipse(2.0, 0.3, 0.7);
  const auto& es = std::get<EllipseShape>(polar(polar(e)).shape());
  CHECK(es.q11 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(es.q12 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(es.q22 == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("support / Minkowski duality") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  std::vector<ConvexBody> bodies = {diamond(), unit_square(), disc(0.7), lp_ball(1.5), lp_ball(3), lp_ball(1),
                                    lp_ball(INFINITY), ellipse(1.5, -0.4, 0.6)};
  for (int k = 0; k < 10; ++k) bodies.push_back(sfh::testing::random_polygon(rng));
  for (const ConvexBody& b : bodies) {
    for (int k = 0; k < 200; ++k) {
      const Vec2 v{n01(rng), n01(rng)};
      CHECK(std::fabs(minkowski_functional(b, v) - support(polar(b), v)) <= 1e-10);
      const Vec2 x = support_point(b, v);
      CHECK(dot(x, v) == doctest::Approx(support(b, v)).epsilon(1e-12));
      CHECK(minkowski_functional(b, x) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(support_point(diamond(), {1, 1}).x == doctest::Approx(0.5));
  CHECK(support_point(diamond(), {1, 1}).y == doctest::Approx(0.5));
}

TEST_CASE("area") {
  CHECK(area(diamond()) == 2.0);
  CHECK(area(disc(1)) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(area(lp_ball(2)) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(area(ellipse(4.0, 0.0, 1.0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(area(lp_ball(1)) == 2.0);
  CHECK(area(lp_ball(INFINITY)) == 4.0);
  // shoelace equals triangle-fan sum exactly
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const ConvexBody b = sfh::testing::random_polygon(rng);
    const auto& v = b.polygon()->vertices;
    double shoelace = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) shoelace += cross(v[i], v[(i + 1) % v.size()]);
    CHECK(b.period() == doctest::Approx(shoelace).epsilon(1e-15));
    CHECK(b.polygon()->node_theta.back() == doctest::Approx(b.period()).epsilon(1e-15));
  }
}

TEST_CASE("boundary_point_at_area and its inverse") {
  const Vec2 p0 = boundary_point_at_area(diamond(), 0.0);
  CHECK(p0.x == 1.0);
  CHECK(p0.y == 0.0);
  const Vec2 p1 = boundary_point_at_area(diamond(), 1.0);
  CHECK(p1.x == doctest::Approx(0.0).scale(1.0));
  CHECK(p1.y == doctest::Approx(1.0));
  const Vec2 d = boundary_point_at_area(disc(1), kPi / 2);
  CHECK(d.x == doctest::Approx(0.0).scale(1.0));
  CHECK(d.y == doctest::Approx(1.0));

  CHECK(sector_area_of_boundary_point(diamond(), {0, 1}) == doctest::Approx(1.0));
  CHECK(sector_area_of_boundary_point(disc(1), {-1, 0}) == doctest::Approx(kPi));
  CHECK(sector_area_of_boundary_point(unit_square(), {1, 1}) == doctest::Approx(1.0));
  CHECK(code_of([] { sector_area_of_boundary_point(diamond(), {0.2, 0.2}); }) == ErrorCode::kNotOnBoundary);

  std::mt19937_64 rng(12);
  std::vector<ConvexBody> bodies = {diamond(), disc(1.3), lp_ball(1.5), lp_ball(4), ellipse(0.5, 0.2, 3.0)};
  for (int k = 0; k < 10; ++k) bodies.push_back(sfh::testing::random_polygon(rng));
  for (const ConvexBody& b : bodies) {
    const double S2 = b.period();
    std::uniform_real_distribution<double> th(-S2, 3 * S2);
    for (int k = 0; k < 300; ++k) {
      const double t = th(rng);
      const Vec2 x = boundary_point_at_area(b, t);
      CHECK(minkowski_functional(b, x) == doctest::Approx(1.0).epsilon(1e-12));
      const Vec2 y = boundary_point_at_area(b, t + S2);
      CHECK(norm(x - y) <= 1e-12);
      double back = sector_area_of_boundary_point(b, x);
      double r = std::fmod(t, S2);
      if (r < 0) r += S2;
      double diff = std::fabs(back - r);
      diff = std::min(diff, S2 - diff);
      CHECK(diff <= 1e-9);
    }
    // strictly increasing along the CCW walk: polar angle is monotone
    double prev = -1.0;
    for (int k = 0; k < 500; ++k) {
      const double a = polar_angle(boundary_point_at_area(b, S2 * (k + 0.5) / 500.0));
      CHECK(a > prev);
      prev = a;
    }
  }
}

TEST_CASE("polygonal approximation stays inscribed") {
  const ConvexBody b = polygonal_approximation(lp_ball(3), 256);
  CHECK(b.period() < lp_ball(3).period());
  CHECK(b.period() == doctest::Approx(lp_ball(3).period()).epsilon(1e-3));
  CHECK_THROWS_AS(polygonal_approximation(disc(1), 2), Error);
}
