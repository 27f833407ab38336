// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   sfh_acceptance [criterion ...]    (default: all ten)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "sfh/commands.hpp"
#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"
#include "sfh/extremal.hpp"
#include "sfh/lp_special.hpp"
#include "sfh/oracle.hpp"
#include "sfh/sr_normal_form.hpp"
#include "support.hpp"

using namespace sfh;
using sfh::testing::kPi;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::pair<std::string, ConvexBody>> trig_bodies(std::mt19937_64& rng) {
  std::vector<std::pair<std::string, ConvexBody>> out;
  for (int k = 0; k < 20; ++k) out.emplace_back("polygon", testing::random_polygon(rng, 3, 12));
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, double(INFINITY)}) out.emplace_back("lp" + fmt("%g", p), lp_ball(p));
  out.emplace_back("disc", disc(1.3));
  out.emplace_back("ellipse", testing::random_ellipse(rng));
  return out;
}

// 1. Generalized Pythagorean identity and inequality.
Outcome pythagorean() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double identity = 0.0, excess = -1.0;
  std::size_t pairs = 0;
  for (const auto& [name, body] : trig_bodies(rng)) {
    const double period = body.period(), polar_period = body.polar().period();
    for (int k = 0; k < 1000; ++k) {
      const double theta = period * (2.0 * u(rng) - 1.0) * 3.0;
      const AngleInterval iv = corresponding_angles(body, theta);
      const double tp = iv.lo + u(rng) * iv.width();
      identity = std::max(identity, std::fabs(pythagorean_value(body, theta, tp) - 1.0));
    }
    for (int k = 0; k < 1000;) {
      const double theta = period * u(rng);
      const double tp = polar_period * u(rng);
      const AngleInterval iv = corresponding_angles(body, theta);
      const double rel = std::remainder(tp - iv.lo, polar_period);
      if (rel >= -1e-9 && rel <= iv.width() + 1e-9) continue;  // a corresponding pair
      excess = std::max(excess, pythagorean_value(body, theta, tp) - 1.0);
      ++pairs;
      ++k;
    }
  }
  const double secs = elapsed(t0);
  const bool ok = identity <= 1e-9 && excess <= 0.0 && secs < 30.0;
  return {ok, "identity residual " + fmt("%.2e", identity) + " (tol 1e-9), max value - 1 on " +
                  std::to_string(pairs) + " non-corresponding pairs " + fmt("%.2e", excess) + " (must be <= 0), " +
                  fmt("%.1f", secs) + " s (limit 30)"};
}

// 2. Finite-difference slopes lie in the derivative ranges.
Outcome derivatives() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double tol = 1e-5, h = 1e-7;
  double worst = 0.0;
  std::size_t corners = 0;
  auto excess = [](const Range& r, double v) { return std::max({0.0, r.lo - v, v - r.hi}); };
  for (const auto& [name, body] : trig_bodies(rng)) {
    const auto cos_f = [&](double t) { return cos_sin(body, t).x; };
    const auto sin_f = [&](double t) { return cos_sin(body, t).y; };
    const std::vector<double> cs = corner_angles(body);
    for (int k = 0; k < 1000; ++k) {
      const double theta = body.period() * u(rng);
      if (!testing::away_from_corners(cs, theta, body.period(), 4 * h)) continue;
      const DerivativeRanges r = derivative_interval(body, theta);
      worst = std::max(worst, excess(r.dcos, finite_difference(cos_f, theta, h).central));
      worst = std::max(worst, excess(r.dsin, finite_difference(sin_f, theta, h).central));
    }
    for (double c : cs) {
      const DerivativeRanges r = derivative_interval(body, c);
      const Slopes sc = finite_difference(cos_f, c, h);
      const Slopes ss = finite_difference(sin_f, c, h);
      worst = std::max({worst, excess(r.dcos, sc.left), excess(r.dcos, sc.right), excess(r.dsin, ss.left),
                        excess(r.dsin, ss.right)});
      ++corners;
    }
  }
  return {worst <= tol, "max slope excess outside ranges " + fmt("%.2e", worst) + " (tol 1e-5), " +
                            std::to_string(corners) + " vertex angles checked one-sided"};
}

// 3. L_p closed forms.
Outcome lp_closed_forms() {
  const auto t0 = Clock::now();
  const double area2 = std::fabs(lp::lp_area(2.0) - kPi);
  const bool area1 = lp::lp_area(1.0) == testing::diamond().polygon()->double_area / 2.0;
  double shelupsky = 0.0, generic = 0.0;
  for (double p : {1.5, 3.0, 4.0}) {
    const PlanarPath path = shelupsky_integrate(p, 2.0 * lp::lp_area(p));
    for (std::size_t k = 0; k < path.times.size(); ++k) {
      shelupsky = std::max(shelupsky, norm(path.points[k] - lp::cos_sin_p(p, path.times[k])));
    }
    const QuadratureTrig q(lp_ball(p));
    for (int k = 0; k < 400; ++k) {
      const double theta = 2.0 * lp::lp_area(p) * (k + 0.5) / 400.0;
      generic = std::max(generic, norm(q.cos_sin(theta) - lp::cos_sin_p(p, theta)));
    }
  }
  const double secs = elapsed(t0);
  const bool ok = area2 <= 1e-12 && area1 && shelupsky <= 1e-6 && generic <= 1e-8 && secs < 60.0;
  return {ok, "|lp_area(2) - pi| " + fmt("%.1e", area2) + ", lp_area(1) == diamond shoelace " +
                  (area1 ? "yes" : "no") + ", Shelupsky sup-error " + fmt("%.2e", shelupsky) +
                  " (tol 1e-6), generic vs beta " + fmt("%.2e", generic) + " (tol 1e-8), " + fmt("%.1f", secs) +
                  " s (limit 60)"};
}

// 4. Closed-form L_1 / L_inf trigonometry.
Outcome l1_linf() {
  const ConvexBody d = testing::diamond();
  const ConvexBody sq = d.polar();
  double a = 0.0, b = 0.0;
  for (int k = 0; k <= 4000; ++k) {
    const double t = 4.0 * k / 4000.0;
    a = std::max(a, std::fabs(cos_sin(d, t).x - (std::fabs(t - 2.0) - 1.0)));
    const double s = 1.0 + 6.0 * k / 4000.0;
    b = std::max(b, std::fabs(cos_sin(sq, s).x - (0.5 * std::fabs(s - 3.0) + 0.5 * std::fabs(s - 5.0) - 2.0)));
  }
  return {a <= 1e-12 && b <= 1e-12,
          "diamond cos vs |t-2|-1: " + fmt("%.1e", a) + ", square cos vs 1/2|t-3|+1/2|t-5|-2: " + fmt("%.1e", b) +
              " (tol 1e-12)"};
}

PMPState initial_state(const VelocitySet& set, const ExtremalSpec& spec) {
  PMPState s;
  s.gamma = spec.gamma;
  s.xy.assign(set.dim(), Vec2{});
  for (std::size_t i = 0; i < set.dim(); ++i) {
    s.hg.push_back(spec.A[i] * cos_sin(set.body(i).polar(), spec.theta0_polar[i]));
  }
  return s;
}

// 5. Synthesis against direct PMP integration, plus conservation and residuals.
Outcome pmp_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(505);
  double gap = 0.0, a_drift = 0.0, h_drift = 0.0, horiz = 0.0, speed = 0.0;
  for (int k = 0; k < 50; ++k) {
    auto cfg = testing::random_config(rng, k % 4);
    if (k % 5 == 4) cfg.spec.gamma = 0;
    const VelocitySet& set = cfg.set;
    const PMPState s0 = initial_state(set, cfg.spec);
    const PMPPath path = integrate_pmp(set, s0, 1.0, 1e-4, 100);
    const Extremal e(set, cfg.spec);
    const double H0 = hamiltonian(set, s0);
    for (std::size_t j = 0; j < path.times.size(); ++j) {
      const PMPState& st = path.states[j];
      const HPoint q = e.state(path.times[j]);
      gap = std::max(gap, std::fabs(q.z - st.z));
      for (std::size_t i = 0; i < set.dim(); ++i) {
        gap = std::max(gap, norm(q.xy[i] - st.xy[i]));
        a_drift = std::max(a_drift, std::fabs(support(set.body(i), st.hg[i]) - cfg.spec.A[i]));
      }
      h_drift = std::max(h_drift, std::fabs(hamiltonian(set, st) - H0));
    }
    const Trajectory tr = synthesize(set, cfg.spec, 1.0, 400001);
    horiz = std::max(horiz, check_horizontality(tr));
    speed = std::max(speed, check_unit_speed(set, tr));
  }
  const double secs = elapsed(t0);
  const bool ok = gap <= 1e-5 && a_drift <= 1e-6 && h_drift <= 1e-6 && horiz <= 1e-6 && speed <= 1e-6 && secs < 300.0;
  return {ok, "50 configs: synthesis vs PMP " + fmt("%.2e", gap) + " (tol 1e-5), A drift " + fmt("%.2e", a_drift) +
                  ", H drift " + fmt("%.2e", h_drift) + ", horizontality " + fmt("%.2e", horiz) + ", unit speed " +
                  fmt("%.2e", speed) + " (tol 1e-6), " + fmt("%.1f", secs) + " s (limit 300)"};
}

// 6. Specializations: power norm on L_p balls, weighted Euclid on discs, and
// the hull / product faces.
Outcome specializations() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double power_err = 0.0, euclid_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double p = 1.2 + 4.0 * u(rng);
    const double q = lp::conjugate_exponent(p);
    const std::size_t n = 1 + trial % 3;
    VelocitySet set(std::vector<ConvexBody>(n, lp_ball(p)), OuterNorm::power(p));
    ExtremalSpec s;
    s.gamma = trial % 2 ? 1 : -1;
    double alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.A.push_back(0.2 + u(rng));
      s.theta0_polar.push_back(8.0 * u(rng));
      alpha += std::pow(s.A[i], q);
    }
    alpha = std::pow(alpha, 1.0 / q);
    const Extremal e(set, s);
    for (int k = 0; k < 50; ++k) {
      const double t = 10.0 * u(rng);
      const HPoint got = e.state(t);
      double z2 = s.gamma * alpha * t;
      for (std::size_t i = 0; i < n; ++i) {
        const double th = s.theta0_polar[i] + s.gamma * std::pow(s.A[i], q - 2.0) * std::pow(alpha, -q / p) * t;
        const Vec2 c0 = lp::cos_sin_p(q, s.theta0_polar[i]), c = lp::cos_sin_p(q, th);
        power_err = std::max({power_err, std::fabs(got.xy[i].x - s.gamma * s.A[i] * (c.y - c0.y)),
                              std::fabs(got.xy[i].y - s.gamma * s.A[i] * (c0.x - c.x))});
        z2 += s.A[i] * s.A[i] * (c0.y * c.x - c0.x * c.y);
      }
      power_err = std::max(power_err, std::fabs(2.0 * got.z - z2));
    }

    std::vector<double> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(0.4 + 2.0 * u(rng));
    VelocitySet wset(std::vector<ConvexBody>(n, disc(1.0)), OuterNorm::weighted_euclid(a));
    double wa = 0.0;
    for (std::size_t i = 0; i < n; ++i) wa += a[i] * a[i] * s.A[i] * s.A[i];
    wa = std::sqrt(wa);
    const Extremal we(wset, s);
    for (int k = 0; k < 50; ++k) {
      const double t = 10.0 * u(rng);
      const HPoint got = we.state(t);
      double z2 = s.gamma * wa * t;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = s.gamma * a[i] * a[i] * t / wa;
        const double th0 = s.theta0_polar[i], th = th0 + w;
        euclid_err = std::max({euclid_err, std::fabs(got.xy[i].x - s.gamma * s.A[i] * (std::sin(th) - std::sin(th0))),
                               std::fabs(got.xy[i].y - s.gamma * s.A[i] * (std::cos(th0) - std::cos(th)))});
        z2 -= s.A[i] * s.A[i] * std::sin(w);
      }
      euclid_err = std::max(euclid_err, std::fabs(2.0 * got.z - z2));
    }
  }
  // Faces: hull (sum) -> simplex on the argmax set; product (max) -> box
  // pinned at 1 on the support of A.
  int face_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 5;
    std::vector<double> A(n);
    for (double& x : A) x = std::floor(4.0 * u(rng)) / 2.0;  // ties and zeros on purpose
    if (std::all_of(A.begin(), A.end(), [](double x) { return x == 0.0; })) A[0] = 1.0;
    const double top = *std::max_element(A.begin(), A.end());
    const SubdiffFace hull = xi_subdifferential(OuterNorm::sum(), A);
    const SubdiffFace prod = xi_subdifferential(OuterNorm::max(), A);
    for (std::size_t i = 0; i < n; ++i) {
      if (hull.kind != SubdiffFace::Kind::kSimplex || hull.active[i] != (A[i] == top)) ++face_mismatch;
      if (prod.kind != SubdiffFace::Kind::kBox || prod.active[i] != (A[i] > 0.0)) ++face_mismatch;
    }
  }
  const bool ok = power_err <= 1e-8 && euclid_err <= 1e-8 && face_mismatch == 0;
  return {ok, "power-norm closed form " + fmt("%.2e", power_err) + ", weighted-Euclid closed form " +
                  fmt("%.2e", euclid_err) + " (tol 1e-8), face index-set mismatches " + std::to_string(face_mismatch)};
}

// 7. Sub-Riemannian benchmark on H^3.
Outcome sub_riemannian() {
  const VelocitySet set({disc(1.0)}, OuterNorm::power(2.0));
  ExtremalSpec s;
  s.A = {1.0};
  s.theta0_polar = {0.0};
  const HPoint q = endpoint(set, s, 2.0 * kPi);
  const double err = std::max({std::fabs(q.xy[0].x), std::fabs(q.xy[0].y), std::fabs(q.z - kPi)});
  const auto t0 = Clock::now();
  const BruteForceResult bf = brute_force_min_time(set, HPoint{{Vec2{}}, kPi}, 32, 8, 1);
  const double secs = elapsed(t0);
  const double rel = std::fabs(bf.T - 2.0 * kPi) / (2.0 * kPi);
  const bool ok = err <= 1e-8 && rel <= 0.02 && secs < 120.0;
  return {ok, "endpoint error " + fmt("%.1e", err) + " (tol 1e-8), brute-force T " + fmt("%.5f", bf.T) + " vs 2pi (" +
                  fmt("%.2f", 100.0 * rel) + "%, limit 2%) in " + fmt("%.1f", secs) + " s (limit 120)"};
}

Eigen::MatrixXd random_symplectic(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd(0.0, 0.4);
  Eigen::MatrixXd S(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) S(i, j) = S(j, i) = nd(rng);
  }
  const Eigen::MatrixXd H = canonical_symplectic(n) * S;
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(2 * n, 2 * n), out = term;
  for (int k = 1; k < 40; ++k) {
    term = term * H / k;
    out += term;
  }
  return out;
}

// 8. Williamson normal form.
Outcome williamson_suite() {
  std::mt19937_64 rng(808);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u(0.5, 3.0);
  double sym = 0.0, diag = 0.0, planted = 0.0;
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (int k = 0; k < 200; ++k) {
      Eigen::MatrixXd B(2 * n, 2 * n);
      for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = nd(rng);
      const Eigen::MatrixXd g = B * B.transpose() + 0.2 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
      const NormalFormResiduals r = residuals(williamson(g));
      sym = std::max(sym, r.symplectic);
      diag = std::max(diag, r.diagonal);

      Eigen::VectorXd a(n), d(2 * n);
      for (Eigen::Index i = 0; i < n; ++i) a(i) = u(rng);
      for (Eigen::Index i = 0; i < n; ++i) d(i) = d(n + i) = 1.0 / (a(i) * a(i));
      const Eigen::MatrixXd S = random_symplectic(rng, n);
      const Eigen::MatrixXd gp = S.transpose() * d.asDiagonal() * S;
      const SymplecticNormalForm f = williamson(0.5 * (gp + gp.transpose()));
      std::sort(a.data(), a.data() + n, std::greater<>());
      for (Eigen::Index i = 0; i < n; ++i) planted = std::max(planted, std::fabs(f.a(i) - a(i)));
    }
  }
  const bool ok = sym <= 1e-9 && diag <= 1e-9 && planted <= 1e-8;
  return {ok, "600 matrices: symplecticity " + fmt("%.2e", sym) + ", diagonalization " + fmt("%.2e", diag) +
                  " (tol 1e-9), planted spectra " + fmt("%.2e", planted) + " (tol 1e-8)"};
}

// Largest |swept(t) - swept(T) t / T| relative to |swept(T)|.
double kepler_deviation(const Trajectory& tr, std::size_t i) {
  const double T = tr.times.back();
  const double total = swept_area(tr, i, T);
  double worst = 0.0;
  for (int k = 1; k < 64; ++k) {
    const double t = T * k / 64.0;
    worst = std::max(worst, std::fabs(swept_area(tr, i, t) - total * t / T));
  }
  return worst / std::fabs(total);
}

// 9. Kepler's law for constant lambda; a switching schedule must break it.
Outcome kepler() {
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto cfg = testing::random_config(rng, k % 4);
    const Extremal e(cfg.set, cfg.spec);
    const Trajectory tr = synthesize(cfg.set, cfg.spec, 3.0, 200001);
    const std::vector<double> lam = e.lambda_at(0.0);
    for (std::size_t i = 0; i < cfg.set.dim(); ++i) {
      if (lam[i] > 0.0) worst = std::max(worst, kepler_deviation(tr, i));
    }
  }
  // Hull of two discs with A on the tie: lambda alternates between the planes.
  const VelocitySet hull({disc(1.0), disc(1.0)}, OuterNorm::sum());
  ExtremalSpec s;
  s.A = {1.0, 1.0};
  s.theta0_polar = {0.0, 0.0};
  s.lambda = LambdaSchedule({{0.0, {1.0, 0.0}}, {0.5, {0.0, 1.0}}}, 1.0);
  const Trajectory sw = synthesize(hull, s, 3.0, 200001);
  const double broken = kepler_deviation(sw, 0);
  const bool ok = worst <= 1e-6 && broken > 1e-2;
  return {ok, "constant lambda: max relative deviation " + fmt("%.2e", worst) +
                  " (tol 1e-6); switching simplex schedule deviation " + fmt("%.2e", broken) + " (must exceed 1e-2)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 10. Byte-identical geodesic and wavefront outputs across runs.
Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("sfh_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << R"({
    "velocity_set": {"bodies": [{"lp": 3}, "diamond"], "outer": {"kind": "power", "p": 2.5}},
    "spec": {"gamma": 1, "A": [1.2, 0.7], "theta0_polar": [0.3, 1.1]},
    "horizon": 4.0, "samples": 2000,
    "wavefront": {"theta_steps": 12, "gammas": [1, -1], "random": 500}
  })";
  std::ostringstream log, err;
  int codes = 0;
  for (const char* run : {"a", "b"}) {
    CommandOptions o;
    o.config_path = cfg.string();
    o.out_dir = (dir / run).string();
    o.seed = 42;
    codes += run_command("geodesic", o, log, err);
    codes += run_command("wavefront", o, log, err);
  }
  std::size_t files = 0;
  bool same = codes == 0;
  for (const char* name : {"geodesic.csv", "geodesic.json", "geodesic.svg", "wavefront.csv"}) {
    const std::string a = slurp(dir / "a" / name), b = slurp(dir / "b" / name);
    same = same && !a.empty() && a == b;
    ++files;
  }
  fs::remove_all(dir);
  return {same, std::to_string(files) + " output files compared across two runs with seed 42: " +
                    (same ? "byte-identical" : "DIFFERENT") + (codes ? " (a command failed: " + err.str() + ")" : "")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pythagorean identity and inequality", pythagorean},
      {"derivative ranges", derivatives},
      {"L_p closed forms", lp_closed_forms},
      {"closed-form L_1/L_inf trigonometry", l1_linf},
      {"extremal / PMP equivalence", pmp_equivalence},
      {"specialization identities", specializations},
      {"sub-Riemannian benchmark", sub_riemannian},
      {"Williamson normal form", williamson_suite},
      {"Kepler's law", kepler},
      {"determinism", determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
