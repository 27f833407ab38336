#include "sfh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"
#include "sfh/extremal.hpp"
#include "sfh/lp_special.hpp"
#include "sfh/oracle.hpp"
#include "sfh/sr_normal_form.hpp"

namespace sfh {
namespace {

constexpr double kPi = std::numbers::pi;

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

void record(SuiteResult& s, std::string name, double value, double tol) {
  s.checks.push_back({std::move(name), value, tol, std::isfinite(value) && value <= tol});
}

ConvexBody random_polygon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const int n = 3 + static_cast<int>(u(rng) * 8);
    std::vector<Vec2> pts;
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * kPi * (k + 0.3 * u(rng)) / n;
      const double r = 0.6 + 0.8 * u(rng);
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    try {
      return polygon_from_vertices(pts);
    } catch (const Error&) {
      continue;
    }
  }
}

SuiteResult trig_suite(std::mt19937_64& rng) {
  SuiteResult s{"trig", {}};
  std::vector<std::pair<std::string, ConvexBody>> bodies;
  for (int k = 0; k < 4; ++k) bodies.emplace_back("polygon" + std::to_string(k), random_polygon(rng));
  for (double p : {1.0, 1.5, 3.0}) bodies.emplace_back("lp" + format_p(p), lp_ball(p));
  bodies.emplace_back("disc", disc(1.3));
  bodies.emplace_back("ellipse", ellipse(2.0, 0.4, 0.7));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& [name, body] : bodies) {
    const ConvexBody pol = body.polar();
    double identity = 0.0, excess = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double theta = body.period() * u(rng);
      const double tp = corresponding_angles(body, theta).midpoint();
      identity = std::max(identity, std::fabs(pythagorean_value(body, theta, tp) - 1.0));
      excess = std::max(excess, pythagorean_value(body, theta, pol.period() * u(rng)) - 1.0);
    }
    record(s, name + ": |pythagorean - 1| on corresponding pairs", identity, 1e-9);
    record(s, name + ": pythagorean excess on random pairs", std::max(0.0, excess), 1e-12);
  }
  return s;
}

SuiteResult lp_suite() {
  SuiteResult s{"lp", {}};
  record(s, "|lp_area(2) - pi|", std::fabs(lp::lp_area(2.0) - kPi), 1e-12);
  record(s, "|lp_area(1) - 2|", std::fabs(lp::lp_area(1.0) - 2.0), 1e-12);
  for (double p : {1.5, 3.0, 4.0}) {
    const PlanarPath path = shelupsky_integrate(p, 2.0 * lp::lp_area(p));
    double err = 0.0;
    for (std::size_t k = 0; k < path.times.size(); k += 10) {
      err = std::max(err, norm(path.points[k] - lp::cos_sin_p(p, path.times[k])));
    }
    record(s, "p = " + format_p(p) + ": Shelupsky RK4 vs closed form", err, 1e-6);
    const QuadratureTrig generic(lp_ball(p));
    double gap = 0.0;
    for (int k = 0; k < 64; ++k) {
      const double theta = 2.0 * lp::lp_area(p) * (k + 0.37) / 64.0;
      gap = std::max(gap, norm(generic.cos_sin(theta) - lp::cos_sin_p(p, theta)));
    }
    record(s, "p = " + format_p(p) + ": generic quadrature vs beta path", gap, 1e-8);
  }
  return s;
}

ExtremalSpec random_spec(std::mt19937_64& rng, const VelocitySet& set) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ExtremalSpec spec;
  spec.gamma = u(rng) < 0.5 ? -1 : 1;
  for (std::size_t i = 0; i < set.dim(); ++i) {
    spec.A.push_back(0.5 + u(rng));
    spec.theta0_polar.push_back(set.body(i).polar().period() * u(rng));
  }
  return spec;
}

std::vector<VelocitySet> smooth_sets() {
  return {VelocitySet({disc(1.0)}, OuterNorm::power(2.0)),
          VelocitySet({lp_ball(3.0), disc(0.8)}, OuterNorm::sum()),
          VelocitySet({ellipse(2.0, 0.3, 0.5), lp_ball(1.5)}, OuterNorm::max()),
          VelocitySet({lp_ball(4.0), lp_ball(4.0)}, OuterNorm::power(4.0)),
          VelocitySet({disc(1.0), disc(1.0), disc(1.0)}, OuterNorm::weighted_euclid({0.7, 1.0, 1.6}))};
}

SuiteResult extremal_suite(std::mt19937_64& rng, bool fault) {
  SuiteResult s{"extremal", {}};
  ExtremalSpec disc_spec;
  disc_spec.A = {1.0};
  disc_spec.theta0_polar = {0.0};
  const HPoint q = endpoint(VelocitySet({disc(1.0)}, OuterNorm::power(2.0)), disc_spec, 2.0 * kPi);
  record(s, "disc geodesic endpoint vs (0, 0, pi)",
         std::max({std::fabs(q.xy[0].x), std::fabs(q.xy[0].y), std::fabs(q.z - kPi)}), 1e-8);
  int k = 0;
  for (const VelocitySet& set : smooth_sets()) {
    const ExtremalSpec spec = random_spec(rng, set);
    Trajectory tr = synthesize(set, spec, 2.0, 20001);
    if (fault) {
      for (HPoint& p : tr.states) p.z *= 2.0;
    }
    const std::string tag = "config " + std::to_string(k++);
    record(s, tag + ": horizontality residual", check_horizontality(tr), 1e-6);
    record(s, tag + ": unit-speed residual", check_unit_speed(set, tr), 1e-6);
  }
  return s;
}

SuiteResult oracle_suite(std::mt19937_64& rng) {
  SuiteResult s{"oracle", {}};
  int k = 0;
  for (const VelocitySet& set : smooth_sets()) {
    const ExtremalSpec spec = random_spec(rng, set);
    PMPState s0;
    s0.gamma = spec.gamma;
    s0.xy.assign(set.dim(), Vec2{});
    for (std::size_t i = 0; i < set.dim(); ++i) s0.hg.push_back(spec.A[i] * cos_sin(set.body(i).polar(), spec.theta0_polar[i]));
    const PMPPath path = integrate_pmp(set, s0, 1.0, 1e-4, 100);
    const Extremal e(set, spec);
    double gap = 0.0, drift = 0.0;
    const double H0 = hamiltonian(set, s0);
    for (std::size_t j = 0; j < path.times.size(); ++j) {
      const HPoint q = e.state(path.times[j]);
      const PMPState& st = path.states[j];
      gap = std::max(gap, std::fabs(q.z - st.z));
      for (std::size_t i = 0; i < set.dim(); ++i) gap = std::max(gap, norm(q.xy[i] - st.xy[i]));
      drift = std::max(drift, std::fabs(hamiltonian(set, st) - H0));
    }
    const std::string tag = "config " + std::to_string(k++);
    record(s, tag + ": PMP integration vs synthesis", gap, 1e-5);
    record(s, tag + ": Hamiltonian drift", drift, 1e-6);
  }
  return s;
}

SuiteResult normalform_suite(std::mt19937_64& rng) {
  SuiteResult s{"normalform", {}};
  std::normal_distribution<double> nd;
  for (Eigen::Index n = 1; n <= 3; ++n) {
    double sym = 0.0, diag = 0.0;
    for (int k = 0; k < 50; ++k) {
      Eigen::MatrixXd B(2 * n, 2 * n);
      for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = nd(rng);
      const Eigen::MatrixXd g = B * B.transpose() + 0.2 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
      const NormalFormResiduals r = residuals(williamson(g));
      sym = std::max(sym, r.symplectic);
      diag = std::max(diag, r.diagonal);
    }
    record(s, "n = " + std::to_string(n) + ": symplecticity residual", sym, 1e-9);
    record(s, "n = " + std::to_string(n) + ": diagonalization residual", diag, 1e-9);
  }
  return s;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  static const char* const kSuites[] = {"trig", "lp", "extremal", "oracle", "normalform"};
  std::vector<std::string> wanted;
  std::stringstream ss(options.selector);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item == "all") {
      wanted.assign(std::begin(kSuites), std::end(kSuites));
      continue;
    }
    if (std::find(std::begin(kSuites), std::end(kSuites), item) == std::end(kSuites)) {
      throw Error(ErrorCode::kConfig, "unknown verify suite \"" + item + "\" (expected all, trig, lp, extremal, oracle, normalform)");
    }
    wanted.push_back(item);
  }
  std::vector<SuiteResult> out;
  for (const std::string& name : wanted) {
    std::mt19937_64 rng(options.seed);
    if (name == "trig") out.push_back(trig_suite(rng));
    if (name == "lp") out.push_back(lp_suite());
    if (name == "extremal") out.push_back(extremal_suite(rng, options.fault_z_scale));
    if (name == "oracle") out.push_back(oracle_suite(rng));
    if (name == "normalform") out.push_back(normalform_suite(rng));
  }
  return out;
}

std::string verify_report_json(const std::vector<SuiteResult>& suites) {
  nlohmann::json j;
  bool all = true;
  j["suites"] = nlohmann::json::array();
  for (const SuiteResult& s : suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : s.checks) {
      checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    j["suites"].push_back({{"name", s.name}, {"pass", s.pass()}, {"checks", checks}});
    all = all && s.pass();
  }
  j["pass"] = all;
  return j.dump(2) + "\n";
}

}  // namespace sfh
