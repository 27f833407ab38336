#include <cmath>
#include <random>

#include "doctest.h"
#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"
#include "sfh/lp_special.hpp"
#include "support.hpp"

using namespace sfh;
using sfh::testing::diamond;
using sfh::testing::kPi;
using sfh::testing::unit_square;

namespace {

std::vector<ConvexBody> body_zoo(std::mt19937_64& rng, int polygons) {
  std::vector<ConvexBody> bodies = {diamond(),   unit_square(), disc(1),     disc(0.6),
                                    lp_ball(1),  lp_ball(1.5),  lp_ball(3),  lp_ball(4),
                                    lp_ball(INFINITY), ellipse(2.0, 0.5, 0.8)};
  for (int k = 0; k < polygons; ++k) bodies.push_back(sfh::testing::random_polygon(rng));
  return bodies;
}

double mod_period(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0) r += period;
  return r;
}

}  // namespace

TEST_CASE("cos_sin: closed forms") {
  for (double t : {-2.0, 0.0, 0.4, 3.0, 10.0}) {
    const Vec2 c = cos_sin(disc(1), t);
    CHECK(c.x == doctest::Approx(std::cos(t)).epsilon(1e-14));
    CHECK(c.y == doctest::Approx(std::sin(t)).epsilon(1e-14));
  }
  const ConvexBody d = diamond();
  const ConvexBody sq = polar(d);
  for (int k = 0; k <= 400; ++k) {
    const double t = 4.0 * k / 400.0;
    CHECK(std::fabs(cos_sin(d, t).x - (std::fabs(t - 2) - 1)) <= 1e-12);
    const double tp = 1.0 + 6.0 * k / 400.0;
    CHECK(std::fabs(cos_sin(sq, tp).x - (0.5 * std::fabs(tp - 3) + 0.5 * std::fabs(tp - 5) - 2)) <= 1e-12);
  }
  // sin_diamond(t) = cos_diamond(t - 1)
  for (int k = 0; k < 100; ++k) {
    const double t = 0.05 * k;
    CHECK(cos_sin(d, t).y == doctest::Approx(cos_sin(d, t - 1).x).scale(1.0).epsilon(1e-13));
  }
}

TEST_CASE("corresponding_angles: examples") {
  const AngleInterval a = corresponding_angles(disc(1), 0.8);
  CHECK(a.lo == doctest::Approx(0.8));
  CHECK(a.degenerate());
  const AngleInterval e = corresponding_angles(diamond(), 0.5);
  CHECK(e.degenerate());
  CHECK(e.lo == doctest::Approx(1.0).epsilon(1e-14));
  const AngleInterval v = corresponding_angles(diamond(), 1.0);
  CHECK(v.lo == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.hi == doctest::Approx(3.0).epsilon(1e-14));
  // quasiperiodic
  for (int k = -2; k <= 2; ++k) {
    const AngleInterval s = corresponding_angles(diamond(), 1.0 + 4.0 * k);
    CHECK(s.lo == doctest::Approx(1.0 + 8.0 * k));
    CHECK(s.hi == doctest::Approx(3.0 + 8.0 * k));
  }
  // the branch straddling theta = 0
  const AngleInterval z = corresponding_angles(diamond(), 0.0);
  CHECK(z.lo == doctest::Approx(-1.0));
  CHECK(z.hi == doctest::Approx(1.0));
}

TEST_CASE("Pythagorean identity and inequality") {
  std::mt19937_64 rng(31);
  for (const ConvexBody& b : body_zoo(rng, 8)) {
    const ConvexBody pol = polar(b);
    std::uniform_real_distribution<double> th(-b.period(), 2 * b.period());
    std::uniform_real_distribution<double> tp(0, pol.period());
    std::uniform_real_distribution<double> unit(0, 1);
    for (int k = 0; k < 200; ++k) {
      const double t = th(rng);
      const AngleInterval iv = corresponding_angles(b, t);
      CHECK(iv.width() < pol.period());
      for (double s : {iv.lo, iv.midpoint(), iv.hi, iv.lo + unit(rng) * iv.width()}) {
        CHECK(std::fabs(pythagorean_value(b, t, s) - 1.0) <= 1e-9);
      }
      // quasiperiodicity
      const AngleInterval iv2 = corresponding_angles(b, t + b.period());
      CHECK(iv2.lo == doctest::Approx(iv.lo + pol.period()).epsilon(1e-12));
      // a random polar angle away from the interval gives a value < 1
      const double s = tp(rng);
      const double d0 = mod_period(s - iv.lo, pol.period());
      const double gap = pol.period() - iv.width();
      if (d0 > iv.width() + 1e-3 * gap && d0 < pol.period() - 1e-3 * gap) {
        CHECK(pythagorean_value(b, t, s) < 1.0);
      }
    }
  }
}

TEST_CASE("correspondence is symmetric") {
  std::mt19937_64 rng(41);
  for (const ConvexBody& b : body_zoo(rng, 6)) {
    const ConvexBody pol = polar(b);
    std::uniform_real_distribution<double> th(0, b.period());
    for (int k = 0; k < 100; ++k) {
      const double t = th(rng);
      const AngleInterval iv = corresponding_angles(b, t);
      const AngleInterval back = corresponding_angles(pol, iv.midpoint());
      const double lo = back.lo - 1e-9, hi = back.hi + 1e-9;
      const double r = t + std::round((back.midpoint() - t) / b.period()) * b.period();
      CHECK((r >= lo && r <= hi));
    }
  }
}

TEST_CASE("derivative_interval: examples") {
  const DerivativeRanges d0 = derivative_interval(disc(1), 0.7);
  CHECK(d0.dcos.lo == doctest::Approx(-std::sin(0.7)));
  CHECK(d0.dsin.hi == doctest::Approx(std::cos(0.7)));
  const DerivativeRanges d1 = derivative_interval(diamond(), 0.5);
  CHECK(d1.dcos.lo == doctest::Approx(-1.0));
  CHECK(d1.dcos.hi == doctest::Approx(-1.0));
  CHECK(d1.dsin.lo == doctest::Approx(1.0));
  CHECK(d1.dsin.hi == doctest::Approx(1.0));
  const DerivativeRanges d2 = derivative_interval(diamond(), 1.0);
  CHECK(d2.dcos.lo == doctest::Approx(-1.0));
  CHECK(d2.dcos.hi == doctest::Approx(-1.0));
  CHECK(d2.dsin.lo == doctest::Approx(-1.0));
  CHECK(d2.dsin.hi == doctest::Approx(1.0));
}

TEST_CASE("derivatives: finite differences at smooth points and corners") {
  std::mt19937_64 rng(51);
  const double h = 1e-6;
  for (const ConvexBody& b : body_zoo(rng, 6)) {
    const ConvexBody pol = polar(b);
    const std::vector<double> corners = corner_angles(b);
    std::uniform_real_distribution<double> th(0, b.period());
    for (int k = 0; k < 300; ++k) {
      const double t = th(rng);
      if (!sfh::testing::away_from_corners(corners, t, b.period(), 1e-4)) continue;
      const double c = corresponding_angles(b, t).midpoint();
      const double fd = (cos_sin(b, t + h).x - cos_sin(b, t - h).x) / (2 * h);
      CHECK(std::fabs(fd + cos_sin(pol, c).y) <= 1e-5);
    }
    for (double t : corners) {
      const DerivativeRanges r = derivative_interval(b, t);
      const double left = (cos_sin(b, t).x - cos_sin(b, t - h).x) / h;
      const double right = (cos_sin(b, t + h).x - cos_sin(b, t).x) / h;
      CHECK(r.dcos.contains(left, 1e-5));
      CHECK(r.dcos.contains(right, 1e-5));
      const double ls = (cos_sin(b, t).y - cos_sin(b, t - h).y) / h;
      const double rs = (cos_sin(b, t + h).y - cos_sin(b, t).y) / h;
      CHECK(r.dsin.contains(ls, 1e-5));
      CHECK(r.dsin.contains(rs, 1e-5));
    }
  }
}

// Concave where nonnegative, convex where nonpositive (as for classical cos).
TEST_CASE("sign-convexity of cos and sin") {
  std::mt19937_64 rng(61);
  for (const ConvexBody& b : body_zoo(rng, 4)) {
    std::uniform_real_distribution<double> th(0, b.period());
    std::uniform_real_distribution<double> w(1e-3, 0.2);
    for (int k = 0; k < 300; ++k) {
      const double a = th(rng), len = w(rng) * b.period();
      for (int comp = 0; comp < 2; ++comp) {
        auto f = [&](double t) { const Vec2 v = cos_sin(b, t); return comp == 0 ? v.x : v.y; };
        bool nonneg = true, nonpos = true;
        for (int j = 0; j <= 20; ++j) {
          const double v = f(a + len * j / 20.0);
          nonneg = nonneg && v >= 0;
          nonpos = nonpos && v <= 0;
        }
        const double mid = f(a + len / 2), avg = 0.5 * (f(a) + f(a + len));
        if (nonneg) CHECK(mid >= avg - 1e-12);
        if (nonpos) CHECK(mid <= avg + 1e-12);
      }
    }
  }
}

TEST_CASE("angle_from_point") {
  const PolarCoords a = angle_from_point(disc(1), {0, 2});
  CHECK(a.r == doctest::Approx(2.0));
  CHECK(a.theta == doctest::Approx(kPi / 2));
  const PolarCoords b = angle_from_point(diamond(), {1, 1});
  CHECK(b.r == doctest::Approx(2.0));
  CHECK(b.theta == doctest::Approx(0.5));
  const PolarCoords c = angle_from_point(diamond(), {-3, 0});
  CHECK(c.r == doctest::Approx(3.0));
  CHECK(c.theta == doctest::Approx(2.0));
  CHECK_THROWS_AS(angle_from_point(diamond(), {0, 0}), Error);

  std::mt19937_64 rng(71);
  std::normal_distribution<double> n01;
  for (const ConvexBody& body : body_zoo(rng, 6)) {
    for (int k = 0; k < 100; ++k) {
      const Vec2 x{n01(rng), n01(rng)};
      const PolarCoords pc = angle_from_point(body, x);
      const Vec2 back = pc.r * cos_sin(body, pc.theta);
      CHECK(norm(back - x) <= 1e-9 * std::max(1.0, norm(x)));
    }
  }
}

TEST_CASE("Jacobian of the polar change of coordinates equals r") {
  std::mt19937_64 rng(81);
  const double h = 1e-6;
  for (const ConvexBody& body : body_zoo(rng, 4)) {
    const std::vector<double> corners = corner_angles(body);
    std::uniform_real_distribution<double> th(0, body.period());
    std::uniform_real_distribution<double> rr(0.5, 2.0);
    for (int k = 0; k < 100; ++k) {
      const double t = th(rng), r = rr(rng);
      if (!sfh::testing::away_from_corners(corners, t, body.period(), 1e-4)) continue;
      const Vec2 dr = cos_sin(body, t);
      const Vec2 dt = r * (cos_sin(body, t + h) - cos_sin(body, t - h)) / (2 * h);
      CHECK(cross(dr, dt) == doctest::Approx(r).epsilon(1e-5));
    }
  }
}

TEST_CASE("angular_velocity_along_curve") {
  std::vector<Vec2> circle, dia, ray;
  for (int k = 0; k <= 1000; ++k) {
    const double s = 2 * kPi * k / 1000.0;
    circle.push_back({std::cos(s), std::sin(s)});
    dia.push_back(cos_sin(diamond(), 4.0 * k / 1000.0));
    ray.push_back({2.0 * k / 1000.0 + 1.0, 0.0});
  }
  const auto c = angular_velocity_along_curve(disc(1), circle);
  CHECK(c.back() - c.front() == doctest::Approx(2 * kPi).epsilon(1e-9));
  const auto d = angular_velocity_along_curve(diamond(), dia);
  CHECK(d.back() - d.front() == doctest::Approx(4.0).epsilon(1e-9));
  for (double v : angular_velocity_along_curve(diamond(), ray)) CHECK(v == 0.0);
  // pointwise agreement mod the period and no jumps
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double pw = angle_from_point(diamond(), dia[k]).theta;
    const double diff = mod_period(d[k] - pw + 2.0, 4.0) - 2.0;
    CHECK(std::fabs(diff) <= 1e-6);
    if (k > 0) CHECK(std::fabs(d[k] - d[k - 1]) < 0.1);
  }
  const std::vector<Vec2> through{{-1, 0}, {0, 0}, {1, 0}};
  CHECK_THROWS_AS(angular_velocity_along_curve(disc(1), through), Error);
}

TEST_CASE("quadrature engine agrees with closed forms") {
  for (const ConvexBody& b : {disc(1.2), ellipse(2.0, 0.5, 0.8), diamond()}) {
    const QuadratureTrig q(b);
    CHECK(q.period() == doctest::Approx(b.period()).epsilon(1e-12));
    for (int k = 0; k < 50; ++k) {
      const double t = b.period() * k / 50.0 + 0.01;
      CHECK(norm(q.cos_sin(t) - cos_sin(b, t)) <= 1e-9);
    }
  }
}
