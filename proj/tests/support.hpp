#pragma once

// Shared generators for the property tests. Everything is seeded so a
// failure reproduces from the printed seed.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sfh/convex_body.hpp"
#include "sfh/trajectory.hpp"
#include "sfh/velocity_set.hpp"

namespace sfh::testing {

inline constexpr double kPi = std::numbers::pi;

inline ConvexBody diamond() {
  const Vec2 v[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return polygon_from_vertices(v);
}

inline ConvexBody unit_square() {
  const Vec2 v[] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  return polygon_from_vertices(v);
}

/// Convex polygon with 3..max_vertices vertices containing the origin.
/// Vertex polar angles keep a minimum separation so no edge is a sliver.
inline ConvexBody random_polygon(std::mt19937_64& rng, int min_vertices = 3, int max_vertices = 12) {
  std::uniform_int_distribution<int> count(min_vertices, max_vertices);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const int n = count(rng);
    std::vector<double> gaps(n);
    double total = 0.0;
    for (double& g : gaps) {
      g = 0.35 + unit(rng);
      total += g;
    }
    const double offset = 2.0 * kPi * unit(rng);
    std::vector<Vec2> pts;
    double angle = offset;
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      const double gap = gaps[k] / total * 2.0 * kPi;
      if (gap >= 0.95 * kPi) ok = false;
      const double r = 0.6 + 0.8 * unit(rng);
      pts.push_back({r * std::cos(angle), r * std::sin(angle)});
      angle += gap;
    }
    if (!ok) continue;
    // Keep only the strictly convex points (monotone chain would reorder).
    bool changed = true;
    while (changed && pts.size() >= 3) {
      changed = false;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Vec2 a = pts[(k + pts.size() - 1) % pts.size()];
        const Vec2 b = pts[k];
        const Vec2 c = pts[(k + 1) % pts.size()];
        if (cross(b - a, c - b) <= 1e-3) {
          pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
          changed = true;
          break;
        }
      }
    }
    if (static_cast<int>(pts.size()) < min_vertices) continue;
    try {
      return polygon_from_vertices(pts);
    } catch (...) {
      continue;
    }
  }
}

inline ConvexBody random_ellipse(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ax(0.4, 2.0);
  std::uniform_real_distribution<double> rot(0.0, kPi);
  const double a = ax(rng), b = ax(rng), t = rot(rng);
  const double c = std::cos(t), s = std::sin(t);
  const double l1 = 1.0 / (a * a), l2 = 1.0 / (b * b);
  return ellipse(l1 * c * c + l2 * s * s, (l1 - l2) * c * s, l1 * s * s + l2 * c * c);
}

/// Smooth-point predicate: theta at least `margin` away from every corner.
inline bool away_from_corners(const std::vector<double>& corners, double theta, double period, double margin) {
  double t = std::fmod(theta, period);
  if (t < 0) t += period;
  for (double c : corners) {
    const double d = std::fabs(t - c);
    if (std::min(d, period - d) < margin) return false;
  }
  return true;
}

/// A random body of the given family: 0 polygon, 1 L_p ball, 2 disc, 3 ellipse.
inline ConvexBody random_body(std::mt19937_64& rng, int family) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (family) {
    case 0: return random_polygon(rng, 3, 8);
    case 1: {
      const double ps[] = {1.5, 3.0, 4.0};
      return lp_ball(ps[static_cast<std::size_t>(unit(rng) * 3) % 3]);
    }
    case 2: return disc(0.5 + unit(rng));
    default: return random_ellipse(rng);
  }
}

struct Config {
  VelocitySet set;
  ExtremalSpec spec;
};

/// Random extremal data for outer norm `outer_kind` (0 sum, 1 max, 2 power,
/// 3 weighted Euclid) with A_i > 0 and gamma = +-1.
inline Config random_config(std::mt19937_64& rng, int outer_kind, bool allow_polygons = true) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = 1 + static_cast<std::size_t>(unit(rng) * 3) % 3;
  std::vector<ConvexBody> bodies;
  for (std::size_t i = 0; i < n; ++i) {
    const int family = static_cast<int>(unit(rng) * 4) % 4;
    bodies.push_back(random_body(rng, allow_polygons ? family : 1 + family % 3));
  }
  OuterNorm outer = OuterNorm::sum();
  if (outer_kind == 1) outer = OuterNorm::max();
  if (outer_kind == 2) outer = OuterNorm::power(1.3 + 2.5 * unit(rng));
  if (outer_kind == 3) {
    std::vector<double> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(0.5 + unit(rng));
    outer = OuterNorm::weighted_euclid(a);
  }
  VelocitySet set(std::move(bodies), outer);
  ExtremalSpec spec;
  spec.gamma = unit(rng) < 0.5 ? -1 : 1;
  for (std::size_t i = 0; i < n; ++i) {
    spec.A.push_back(0.5 + 1.5 * unit(rng));
    spec.theta0_polar.push_back(set.body(i).polar().period() * unit(rng));
  }
  return {std::move(set), std::move(spec)};
}

}  // namespace sfh::testing
