#pragma once

// Compact convex planar sets with the origin in the interior.
//
// A ConvexBody is an immutable handle onto a primal/polar pair; polar() flips
// the side and never recomputes anything, so Omega and Omega° always share
// the same tables. Polygons are the canonical representation; discs,
// ellipses and L_p balls keep closed-form paths.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "sfh/vec2.hpp"

namespace sfh {

/// Precomputed walk over a CCW convex polygon.
///
/// The boundary walk starts at the intersection of the positive x-axis with
/// the boundary (nodes.front()), visits every vertex counterclockwise and
/// returns to the start. node_theta holds the cumulative doubled sector area,
/// which is linear along each segment.
struct PolygonTables {
  std::vector<Vec2> vertices;
  std::vector<Vec2> normals;        // normals[k] . x == 1 on edge k (vertices[k] -> vertices[k+1])
  std::vector<double> vertex_theta;  // doubled sector area of each vertex, in [0, 2S)
  std::vector<Vec2> nodes;
  std::vector<double> node_theta;
  std::vector<double> node_angle;      // polar angles, last entry 2 pi
  std::vector<std::size_t> node_edge;  // edge carrying segment nodes[j] -> nodes[j+1]
  std::vector<int> node_vertex;        // vertex index sitting at node j, or -1
  double double_area = 0.0;            // shoelace sum, i.e. the period 2S
};

struct LpShape {
  double p = 2.0;
  /// Exact polygon used for p == 1, p == inf and for p too close to either.
  std::optional<PolygonTables> exact;
};

struct DiscShape {
  double radius = 1.0;
};

/// {v : v^T Q v <= 1}; m = upper-triangular factor with m m^T = Q^{-1}.
struct EllipseShape {
  double q11 = 1.0, q12 = 0.0, q22 = 1.0;
  double m11 = 1.0, m12 = 0.0, m22 = 1.0;
};

using BodyShape = std::variant<PolygonTables, LpShape, DiscShape, EllipseShape>;

enum class BodyKind { kPolygon, kLpBall, kDisc, kEllipse };

class ConvexBody {
 public:
  BodyKind kind() const;
  const BodyShape& shape() const;
  ConvexBody polar() const { return ConvexBody(pair_, !dual_); }

  /// Polygon tables when this side is polygon-backed (including L_1/L_inf).
  const PolygonTables* polygon() const;

  /// For polygon-backed sides: the polar-side vertex that is the normal of edge k.
  std::size_t dual_vertex_of_edge(std::size_t edge) const;

  /// Twice the area: the period of cos/sin of this body.
  double period() const;

  struct Pair;

 private:
  friend ConvexBody make_body(std::shared_ptr<const Pair> pair);
  ConvexBody(std::shared_ptr<const Pair> pair, bool dual) : pair_(std::move(pair)), dual_(dual) {}

  std::shared_ptr<const Pair> pair_;
  bool dual_ = false;
};

struct ConvexBody::Pair {
  BodyShape primal;
  BodyShape dual;
  double primal_period = 0.0;
  double dual_period = 0.0;
};

/// Validates and normalizes a vertex list (CW input is reversed, collinear
/// runs merged). Throws NotConvex, OriginNotInterior or DegenerateInput.
ConvexBody polygon_from_vertices(std::span<const Vec2> vertices);
ConvexBody lp_ball(double p);
ConvexBody disc(double radius);
ConvexBody ellipse(double q11, double q12, double q22);

double support(const ConvexBody& body, Vec2 covector);
double minkowski_functional(const ConvexBody& body, Vec2 point);

/// A maximizer of <covector, x> over the body; the midpoint of the face when
/// the maximizer is an edge. The zero covector yields the origin.
Vec2 support_point(const ConvexBody& body, Vec2 covector);
inline ConvexBody polar(const ConvexBody& body) { return body.polar(); }
double area(const ConvexBody& body);

/// P_theta: the boundary point whose sector from the positive x-axis has
/// doubled area theta (mod the period).
Vec2 boundary_point_at_area(const ConvexBody& body, double theta);

/// Inverse of boundary_point_at_area on [0, period). Throws NotOnBoundary
/// unless |mu(point) - 1| <= 1e-9.
double sector_area_of_boundary_point(const ConvexBody& body, Vec2 point);

/// Inscribed polygon through n boundary points equidistributed in theta.
ConvexBody polygonal_approximation(const ConvexBody& body, std::size_t n);

/// Boundary-membership tolerance for sector_area_of_boundary_point.
inline constexpr double kBoundaryTol = 1e-9;

}  // namespace sfh
