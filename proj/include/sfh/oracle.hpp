#pragma once

// Independent numerical checks: direct integration of the Pontryagin
// system, the Shelupsky ODE, a brute-force minimum-time probe and
// finite-difference helpers. Nothing here uses the closed-form synthesis.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sfh/trajectory.hpp"
#include "sfh/velocity_set.hpp"

namespace sfh {

struct PMPState {
  std::vector<Vec2> xy;
  double z = 0.0;
  std::vector<Vec2> hg;  // (h_i, g_i)
  double gamma = 0.0;
};

struct PMPPath {
  std::vector<double> times;
  std::vector<PMPState> states;
};

/// Pointwise maximizer of the Hamiltonian at covector hg.
struct PMPControl {
  std::vector<double> A;       // s_{Omega_i}(h_i, g_i)
  std::vector<double> lambda;  // face barycenter, zero where A_i == 0
  std::vector<Vec2> u;         // argmax over Omega_i, face midpoint on ties
};
PMPControl pmp_control(const VelocitySet& set, std::span<const Vec2> hg);

/// sum_i lambda_i (h_i u_i + g_i v_i) at the maximizing control.
double hamiltonian(const VelocitySet& set, const PMPState& state);

/// Fixed-step RK4 of
///   x_i' = lambda_i u_i, y_i' = lambda_i v_i, z' = 1/2 sum lambda_i (x_i v_i - y_i u_i),
///   h_i' = -gamma lambda_i v_i, g_i' = gamma lambda_i u_i.
/// On polygon planes the maximizing vertex is held fixed inside a step and
/// switch instants are located by bisection, so the discontinuous control
/// never straddles an RK stage. Records every `record_every` steps plus the
/// final state. Throws ZeroCovector when h, g and gamma all vanish.
PMPPath integrate_pmp(const VelocitySet& set, const PMPState& initial, double T, double step = 1e-4,
                      std::size_t record_every = 1);

struct PlanarPath {
  std::vector<double> times;
  std::vector<Vec2> points;
};

/// RK4 of x' = -|y|^{p-1} sgn y, y' = |x|^{p-1} sgn x from (1, 0).
PlanarPath shelupsky_integrate(double p, double T, double step = 1e-4);

struct BruteForceResult {
  double T = 0.0;
  std::vector<double> angles;  // K boundary-control angles, equal durations T / K
  double residual = 0.0;       // endpoint distance at T
};

/// Upper-bound probe for the minimum time to reach `target` (n == 1 only):
/// bisection on T; for each T, coordinate descent over K piecewise-constant
/// boundary controls from several restarts (run concurrently, reduced by
/// minimum). Throws DimensionUnsupported for n != 1, DomainError for K > 32.
BruteForceResult brute_force_min_time(const VelocitySet& set, const HPoint& target, std::size_t K = 32,
                                      std::size_t restarts = 8, std::uint64_t seed = 1);

/// Endpoint of K equal-duration boundary controls (n == 1), exact.
HPoint piecewise_endpoint(const VelocitySet& set, std::span<const double> angles, double T);

struct Slopes {
  double left = 0.0;
  double right = 0.0;
  double central = 0.0;
};
Slopes finite_difference(const std::function<double(double)>& f, double x, double h);

inline constexpr double kEndpointTol = 1e-3;

}  // namespace sfh
