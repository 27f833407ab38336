#include "sfh/kernels.hpp"

#include <exception>

#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"
#include "sfh/extremal.hpp"

namespace sfh {
namespace {

TrigTable table_grid(const ConvexBody& body, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kTooFewSamples, "a trig table needs at least 2 samples");
  TrigTable t;
  t.theta.resize(n);
  t.value.resize(n);
  const double period = body.period();
  for (std::size_t k = 0; k < n; ++k) t.theta[k] = period * static_cast<double>(k) / static_cast<double>(n - 1);
  return t;
}

}  // namespace

std::vector<HPoint> wavefront_serial(const VelocitySet& set, std::span<const ExtremalSpec> specs, double T) {
  std::vector<HPoint> out(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) out[k] = endpoint(set, specs[k], T);
  return out;
}

std::vector<HPoint> wavefront_parallel(const VelocitySet& set, std::span<const ExtremalSpec> specs, double T) {
  std::vector<HPoint> out(specs.size());
  const auto n = static_cast<std::ptrdiff_t>(specs.size());
  // The first exception wins; the others are dropped after the loop.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = endpoint(set, specs[static_cast<std::size_t>(k)], T);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

TrigTable trig_table_serial(const ConvexBody& body, std::size_t n) {
  TrigTable t = table_grid(body, n);
  for (std::size_t k = 0; k < n; ++k) t.value[k] = cos_sin(body, t.theta[k]);
  return t;
}

TrigTable trig_table_parallel(const ConvexBody& body, std::size_t n) {
  TrigTable t = table_grid(body, n);
  const auto m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) {
    t.value[static_cast<std::size_t>(k)] = cos_sin(body, t.theta[static_cast<std::size_t>(k)]);
  }
  return t;
}

}  // namespace sfh
