#pragma once

// Batch kernels with a serial reference and an OpenMP version. Both write
// into preallocated slots indexed by the input, so results are identical
// (bit for bit) regardless of the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "sfh/convex_body.hpp"
#include "sfh/trajectory.hpp"
#include "sfh/velocity_set.hpp"

namespace sfh {

/// endpoint(set, specs[k], T) for every k.
std::vector<HPoint> wavefront_serial(const VelocitySet& set, std::span<const ExtremalSpec> specs, double T);
std::vector<HPoint> wavefront_parallel(const VelocitySet& set, std::span<const ExtremalSpec> specs, double T);

struct TrigTable {
  std::vector<double> theta;
  std::vector<Vec2> value;  // (cos, sin)
};

/// cos/sin on theta_k = period * k / (n - 1), k = 0..n-1.
TrigTable trig_table_serial(const ConvexBody& body, std::size_t n);
TrigTable trig_table_parallel(const ConvexBody& body, std::size_t n);

}  // namespace sfh
