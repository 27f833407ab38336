#pragma once

// JSON run configuration shared by the command-line tool. Every error names
// the offending field by its JSON path, e.g. "$.spec.A[1]: expected a number".

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sfh/convex_body.hpp"
#include "sfh/trajectory.hpp"
#include "sfh/velocity_set.hpp"

namespace sfh {

/// A body as written in a config: {"disc": r}, {"lp": p | "inf"},
/// {"polygon": [[x, y], ...]}, {"ellipse": [q11, q12, q22]}, or the strings
/// "diamond" and "square".
struct BodyDesc {
  enum class Kind { kPolygon, kLp, kDisc, kEllipse };
  Kind kind = Kind::kDisc;
  std::vector<Vec2> vertices;
  double value = 1.0;  // p for kLp, radius for kDisc
  double q[3] = {1.0, 0.0, 1.0};

  ConvexBody build() const;
};

struct OutputSpec {
  std::string format;  // csv | json | svg
  std::string path;
};

/// Endpoint grid for the wavefront command: a tensor grid of theta_steps
/// polar angles per plane for every direction of A and every gamma, plus
/// `random` seeded draws of (theta°_0, A direction).
struct WavefrontGrid {
  std::size_t theta_steps = 16;
  std::vector<std::vector<double>> directions;  // empty: the spec's A
  std::vector<int> gammas;                      // empty: the spec's gamma
  std::size_t random = 0;
};

struct RunConfig {
  std::vector<BodyDesc> bodies;
  OuterNorm outer = OuterNorm::sum();
  std::optional<ExtremalSpec> spec;
  double horizon = 1.0;
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
  std::vector<OutputSpec> outputs;
  std::optional<WavefrontGrid> wavefront;
  std::optional<BodyDesc> body;            // trig / polar
  std::optional<Eigen::MatrixXd> matrix;   // normalform

  /// Throws Config when the config has no velocity_set.
  VelocitySet velocity_set() const;
};

/// Throws Error(Config) with a line/column (syntax) or JSON-path (schema)
/// address.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);

}  // namespace sfh
