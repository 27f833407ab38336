#include "sfh/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "sfh/convex_trig.hpp"
#include "sfh/error.hpp"
#include "sfh/extremal.hpp"
#include "sfh/kernels.hpp"
#include "sfh/sr_normal_form.hpp"
#include "sfh/svg.hpp"
#include "sfh/verify.hpp"

namespace sfh {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::kConfig, what); }

// Outputs listed in the config, or the command's defaults.
std::vector<OutputSpec> outputs_or(const RunConfig& c, std::vector<OutputSpec> defaults) {
  return c.outputs.empty() ? defaults : c.outputs;
}

void write_file(const CommandOptions& o, const std::string& path, const std::string& text, std::ostream& log) {
  const fs::path full = fs::path(o.out_dir) / path;
  if (full.has_parent_path()) fs::create_directories(full.parent_path());
  std::ofstream f(full, std::ios::binary);
  if (!f) config_error("cannot write " + full.string());
  f << text;
  log << "wrote " << full.string() << "\n";
}

std::string line(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_number(v);
  }
  return s;
}

json meta_of(const RunConfig& c) {
  const json all = json::parse(serialize_config(c));
  json meta = json::object();
  for (const char* key : {"velocity_set", "spec", "horizon", "samples", "seed"}) {
    if (all.contains(key)) meta[key] = all[key];
  }
  return meta;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t";
  for (std::size_t i = 1; i <= tr.dim(); ++i) out += ",x" + std::to_string(i) + ",y" + std::to_string(i);
  out += ",z\n";
  for (std::size_t k = 0; k < tr.size(); ++k) {
    out += format_number(tr.times[k]);
    for (const Vec2& p : tr.states[k].xy) out += ',' + format_number(p.x) + ',' + format_number(p.y);
    out += ',' + format_number(tr.states[k].z) + '\n';
  }
  return out;
}

std::string trajectory_json(const Trajectory& tr, const RunConfig& c) {
  json samples = json::array();
  for (std::size_t k = 0; k < tr.size(); ++k) {
    json row = json::array({tr.times[k]});
    for (const Vec2& p : tr.states[k].xy) row.push_back(p.x);
    for (const Vec2& p : tr.states[k].xy) row.push_back(p.y);
    row.push_back(tr.states[k].z);
    samples.push_back(std::move(row));
  }
  return json{{"meta", meta_of(c)}, {"samples", samples}}.dump() + "\n";
}

std::string trajectory_svg(const Trajectory& tr) {
  std::vector<Panel> panels;
  for (std::size_t i = 0; i < tr.dim(); ++i) {
    Series s{"", {}, {}};
    for (const HPoint& q : tr.states) {
      s.x.push_back(q.xy[i].x);
      s.y.push_back(q.xy[i].y);
    }
    const std::string k = std::to_string(i + 1);
    panels.push_back({"plane " + k, "x" + k, "y" + k, {std::move(s)}, true});
  }
  Series z{"", tr.times, {}};
  for (const HPoint& q : tr.states) z.y.push_back(q.z);
  panels.push_back({"z(t)", "t", "z", {std::move(z)}, false});
  return render_svg(panels);
}

ExtremalSpec spec_or_default(const RunConfig& c, std::size_t n) {
  if (c.spec) return *c.spec;
  ExtremalSpec s;
  s.A.assign(n, 1.0);
  s.theta0_polar.assign(n, 0.0);
  return s;
}

const ConvexBody body_of(const RunConfig& c) {
  if (c.body) return c.body->build();
  if (c.bodies.size() == 1) return c.bodies.front().build();
  config_error("$.body: missing (or give a velocity_set with exactly one body)");
}

json describe(const ConvexBody& b) {
  json j{{"period", b.period()}};
  if (const PolygonTables* poly = b.polygon()) {
    j["kind"] = "polygon";
    json v = json::array();
    for (Vec2 p : poly->vertices) v.push_back({p.x, p.y});
    j["vertices"] = v;
  } else if (const auto* lp = std::get_if<LpShape>(&b.shape())) {
    j["kind"] = "lp";
    j["p"] = lp->p;
  } else if (const auto* d = std::get_if<DiscShape>(&b.shape())) {
    j["kind"] = "disc";
    j["radius"] = d->radius;
  } else if (const auto* e = std::get_if<EllipseShape>(&b.shape())) {
    j["kind"] = "ellipse";
    j["q"] = {e->q11, e->q12, e->q22};
  }
  j["corner_angles"] = corner_angles(b);
  return j;
}

}  // namespace

int cmd_trig(const RunConfig& c, const CommandOptions& o, std::ostream& log) {
  const ConvexBody body = body_of(c);
  const TrigTable t = trig_table_parallel(body, c.samples);
  std::string csv = "theta,cos,sin\n";
  Series cs{"cos", t.theta, {}}, sn{"sin", t.theta, {}}, loop{"", {}, {}};
  for (std::size_t k = 0; k < t.theta.size(); ++k) {
    csv += line({t.theta[k], t.value[k].x, t.value[k].y}) + '\n';
    cs.y.push_back(t.value[k].x);
    sn.y.push_back(t.value[k].y);
    loop.x.push_back(t.value[k].x);
    loop.y.push_back(t.value[k].y);
  }
  const std::vector<Panel> panels = {{"cos and sin, period " + format_number(body.period()), "theta", "", {cs, sn}, false},
                                     {"boundary", "cos", "sin", {loop}, true}};
  for (const OutputSpec& out : outputs_or(c, {{"csv", "trig.csv"}, {"svg", "trig.svg"}})) {
    if (out.format == "csv") write_file(o, out.path, csv, log);
    if (out.format == "svg") write_file(o, out.path, render_svg(panels), log);
    if (out.format == "json") {
      json j{{"body", describe(body)}, {"theta", t.theta}, {"cos", cs.y}, {"sin", sn.y}};
      write_file(o, out.path, j.dump() + "\n", log);
    }
  }
  log << "period " << format_number(body.period()) << "\n";
  return kExitOk;
}

int cmd_polar(const RunConfig& c, const CommandOptions& o, std::ostream& log) {
  const ConvexBody body = body_of(c);
  const ConvexBody pol = body.polar();
  const TrigTable t = trig_table_parallel(pol, c.samples);
  json boundary = json::array();
  for (Vec2 p : t.value) boundary.push_back({p.x, p.y});
  json report{{"body", describe(body)}, {"polar", describe(pol)}};
  report["polar"]["boundary"] = boundary;
  for (const OutputSpec& out : outputs_or(c, {{"json", "polar.json"}, {"svg", "polar.svg"}})) {
    if (out.format == "json") write_file(o, out.path, report.dump(2) + "\n", log);
    if (out.format == "csv") {
      std::string csv = "theta_polar,cos_polar,sin_polar\n";
      for (std::size_t k = 0; k < t.theta.size(); ++k) csv += line({t.theta[k], t.value[k].x, t.value[k].y}) + '\n';
      write_file(o, out.path, csv, log);
    }
    if (out.format == "svg") {
      const TrigTable b = trig_table_parallel(body, c.samples);
      Series sb{"body", {}, {}}, sp{"polar", {}, {}};
      for (Vec2 p : b.value) sb.x.push_back(p.x), sb.y.push_back(p.y);
      for (Vec2 p : t.value) sp.x.push_back(p.x), sp.y.push_back(p.y);
      write_file(o, out.path, render_svg({{"body and polar", "x", "y", {sb, sp}, true}}), log);
    }
  }
  log << "period " << format_number(body.period()) << ", polar period " << format_number(pol.period()) << "\n";
  return kExitOk;
}

int cmd_geodesic(const RunConfig& c, const CommandOptions& o, std::ostream& log) {
  const VelocitySet set = c.velocity_set();
  if (!c.spec) config_error("$.spec: missing");
  const Trajectory tr = synthesize(set, *c.spec, c.horizon, c.samples);
  for (const OutputSpec& out : outputs_or(c, {{"csv", "geodesic.csv"}, {"json", "geodesic.json"}, {"svg", "geodesic.svg"}})) {
    if (out.format == "csv") write_file(o, out.path, trajectory_csv(tr), log);
    if (out.format == "json") write_file(o, out.path, trajectory_json(tr, c), log);
    if (out.format == "svg") write_file(o, out.path, trajectory_svg(tr), log);
  }
  const HPoint& q = tr.states.back();
  log << "endpoint";
  for (const Vec2& p : q.xy) log << ' ' << format_number(p.x) << ' ' << format_number(p.y);
  log << ' ' << format_number(q.z) << "\n";
  if (tr.size() >= 3) {
    log << "horizontality residual " << format_number(check_horizontality(tr)) << "\n";
    log << "unit-speed residual " << format_number(check_unit_speed(set, tr)) << "\n";
  }
  return kExitOk;
}

int cmd_wavefront(const RunConfig& c, const CommandOptions& o, std::ostream& log) {
  const VelocitySet set = c.velocity_set();
  const std::size_t n = set.dim();
  const ExtremalSpec base = spec_or_default(c, n);
  const WavefrontGrid grid = c.wavefront.value_or(WavefrontGrid{});
  std::vector<std::vector<double>> dirs = grid.directions;
  if (dirs.empty()) dirs.push_back(base.A);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    if (dirs[d].size() != n) config_error("$.wavefront.directions[" + std::to_string(d) + "]: expected " + std::to_string(n) + " entries");
  }
  std::vector<int> gammas = grid.gammas;
  if (gammas.empty()) gammas.push_back(base.gamma);
  for (int g : gammas) {
    if (g == 0) config_error("$.spec.gamma: the wavefront needs gamma = +-1");
  }
  std::vector<double> periods;
  for (std::size_t i = 0; i < n; ++i) periods.push_back(set.body(i).polar().period());

  double total = static_cast<double>(dirs.size() * gammas.size());
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(grid.theta_steps);
  if (total + static_cast<double>(grid.random) > 1e7) config_error("$.wavefront: more than 1e7 endpoints requested");

  std::vector<ExtremalSpec> specs;
  for (int g : gammas) {
    for (const auto& A : dirs) {
      std::vector<std::size_t> idx(n, 0);
      for (bool more = grid.theta_steps > 0; more;) {
        ExtremalSpec s;
        s.gamma = g;
        s.A = A;
        for (std::size_t i = 0; i < n; ++i) {
          s.theta0_polar.push_back(periods[i] * static_cast<double>(idx[i]) / static_cast<double>(grid.theta_steps));
        }
        specs.push_back(std::move(s));
        more = false;
        for (std::size_t i = 0; i < n && !more; ++i) {
          if (++idx[i] < grid.theta_steps) {
            more = true;
          } else {
            idx[i] = 0;
          }
        }
      }
    }
  }
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> nd;
  for (std::size_t r = 0; r < grid.random; ++r) {
    ExtremalSpec s;
    s.gamma = gammas[static_cast<std::size_t>(u(rng) * static_cast<double>(gammas.size())) % gammas.size()];
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.A.push_back(std::fabs(nd(rng)));
      len += s.A.back() * s.A.back();
      s.theta0_polar.push_back(periods[i] * u(rng));
    }
    for (double& a : s.A) a /= std::sqrt(len);
    specs.push_back(std::move(s));
  }

  const std::vector<HPoint> ends = wavefront_parallel(set, specs, c.horizon);
  std::string csv = "gamma";
  for (std::size_t i = 1; i <= n; ++i) csv += ",A" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) csv += ",theta" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) csv += ",x" + std::to_string(i) + ",y" + std::to_string(i);
  csv += ",z\n";
  for (std::size_t k = 0; k < specs.size(); ++k) {
    csv += std::to_string(specs[k].gamma);
    for (double a : specs[k].A) csv += ',' + format_number(a);
    for (double t : specs[k].theta0_polar) csv += ',' + format_number(t);
    for (const Vec2& p : ends[k].xy) csv += ',' + format_number(p.x) + ',' + format_number(p.y);
    csv += ',' + format_number(ends[k].z) + '\n';
  }
  for (const OutputSpec& out : outputs_or(c, {{"csv", "wavefront.csv"}})) {
    if (out.format == "csv") write_file(o, out.path, csv, log);
    if (out.format == "json") {
      json pts = json::array();
      for (const HPoint& q : ends) {
        json row = json::array();
        for (const Vec2& p : q.xy) row.push_back(p.x);
        for (const Vec2& p : q.xy) row.push_back(p.y);
        row.push_back(q.z);
        pts.push_back(std::move(row));
      }
      write_file(o, out.path, json{{"meta", meta_of(c)}, {"endpoints", pts}}.dump() + "\n", log);
    }
    if (out.format == "svg") {
      Series xy{"", {}, {}}, xz{"", {}, {}};
      for (const HPoint& q : ends) {
        xy.x.push_back(q.xy[0].x);
        xy.y.push_back(q.xy[0].y);
        xz.x.push_back(q.xy[0].x);
        xz.y.push_back(q.z);
      }
      write_file(o, out.path, render_svg({{"endpoints (x1, y1)", "x1", "y1", {xy}, true},
                                          {"endpoints (x1, z)", "x1", "z", {xz}, false}}), log);
    }
  }
  log << specs.size() << " endpoints at T = " << format_number(c.horizon) << "\n";
  return kExitOk;
}

int cmd_normalform(const RunConfig& c, const CommandOptions& o, std::ostream& log) {
  if (!c.matrix) config_error("$.matrix: missing");
  const SymplecticNormalForm f = williamson(*c.matrix);
  const NormalFormResiduals r = residuals(f);
  json C = json::array();
  for (Eigen::Index i = 0; i < f.C.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < f.C.cols(); ++k) row.push_back(f.C(i, k));
    C.push_back(row);
  }
  std::vector<double> a(f.a.data(), f.a.data() + f.a.size());
  const json report{{"a", a}, {"C", C}, {"residuals", {{"symplectic", r.symplectic}, {"diagonal", r.diagonal}}}};
  for (const OutputSpec& out : outputs_or(c, {{"json", "normalform.json"}})) {
    if (out.format == "json") write_file(o, out.path, report.dump(2) + "\n", log);
  }
  log << "a";
  for (double v : a) log << ' ' << format_number(v);
  log << "\nsymplectic residual " << format_number(r.symplectic) << "\ndiagonal residual " << format_number(r.diagonal)
      << "\n";
  return (r.symplectic <= 1e-9 && r.diagonal <= 1e-9) ? kExitOk : kExitValidation;
}

int cmd_verify(const RunConfig& c, const CommandOptions& o, std::ostream& log) {
  if (!o.fault.empty() && o.fault != "z-scale") config_error("unknown fault \"" + o.fault + "\" (expected z-scale)");
  VerifyOptions vo;
  vo.selector = o.suite;
  vo.seed = c.seed;
  vo.fault_z_scale = o.fault == "z-scale";
  const std::vector<SuiteResult> suites = run_verify(vo);
  bool pass = true;
  for (const SuiteResult& s : suites) {
    log << (s.pass() ? "PASS " : "FAIL ") << s.name << "\n";
    for (const Check& ch : s.checks) {
      if (!ch.pass) log << "  failed: " << ch.name << " = " << format_number(ch.value) << " > " << format_number(ch.tolerance) << "\n";
    }
    pass = pass && s.pass();
  }
  for (const OutputSpec& out : outputs_or(c, {{"json", "verify.json"}})) {
    if (out.format == "json") write_file(o, out.path, verify_report_json(suites), log);
  }
  return pass ? kExitOk : kExitValidation;
}

int run_command(const std::string& command, const CommandOptions& o, std::ostream& log, std::ostream& err) {
  try {
    RunConfig c;
    if (o.config_path) {
      std::ifstream f(*o.config_path, std::ios::binary);
      if (!f) config_error("cannot read config " + *o.config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      c = parse_config(ss.str());
    } else if (command != "verify") {
      config_error("--config is required for " + command);
    }
    if (o.seed) c.seed = *o.seed;
    if (o.samples) {
      if (*o.samples < 2) config_error("--samples must be at least 2");
      c.samples = *o.samples;
    }
    if (command == "trig") return cmd_trig(c, o, log);
    if (command == "polar") return cmd_polar(c, o, log);
    if (command == "geodesic") return cmd_geodesic(c, o, log);
    if (command == "wavefront") return cmd_wavefront(c, o, log);
    if (command == "normalform") return cmd_normalform(c, o, log);
    if (command == "verify") return cmd_verify(c, o, log);
    config_error("unknown command " + command);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace sfh
