#include "sfh/config.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"

#include "sfh/error.hpp"

namespace sfh {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kConfig, path + ": " + what);
}

// A JSON node together with its path, for addressed errors.
struct Node {
  const json& j;
  std::string path;

  bool has(const char* key) const { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }
  Node at(const char* key) const {
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
    return {j.at(key), path + "." + key};
  }
  Node operator[](std::size_t i) const { return {j.at(i), path + "[" + std::to_string(i) + "]"}; }
  std::size_t size() const {
    if (!j.is_array()) fail(path, "expected an array");
    return j.size();
  }
  double number() const {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) {
      return std::numeric_limits<double>::infinity();
    }
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }
  double finite() const {
    const double v = number();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
  }
  double positive() const {
    const double v = finite();
    if (!(v > 0.0)) fail(path, "expected a positive number");
    return v;
  }
  std::int64_t integer() const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
  }
  std::size_t count() const {
    const std::int64_t v = integer();
    if (v < 0) fail(path, "expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  std::string string() const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].finite());
    return out;
  }
  Vec2 point() const {
    if (size() != 2) fail(path, "expected [x, y]");
    return {(*this)[0].finite(), (*this)[1].finite()};
  }
};

BodyDesc parse_body(const Node& n) {
  BodyDesc b;
  if (n.j.is_string()) {
    const std::string name = n.string();
    b.kind = BodyDesc::Kind::kPolygon;
    if (name == "diamond") {
      b.vertices = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    } else if (name == "square") {
      b.vertices = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    } else {
      fail(n.path, "unknown body \"" + name + "\" (expected diamond or square)");
    }
    return b;
  }
  if (!n.j.is_object() || n.j.size() != 1) {
    fail(n.path, "expected one of {\"disc\": r}, {\"lp\": p}, {\"polygon\": [...]}, {\"ellipse\": [q11, q12, q22]}");
  }
  if (n.has("disc")) {
    b.kind = BodyDesc::Kind::kDisc;
    b.value = n.at("disc").positive();
  } else if (n.has("lp")) {
    b.kind = BodyDesc::Kind::kLp;
    const Node p = n.at("lp");
    b.value = p.number();
    if (!(b.value >= 1.0)) fail(p.path, "expected p >= 1 or \"inf\"");
  } else if (n.has("polygon")) {
    b.kind = BodyDesc::Kind::kPolygon;
    const Node v = n.at("polygon");
    for (std::size_t i = 0; i < v.size(); ++i) b.vertices.push_back(v[i].point());
  } else if (n.has("ellipse")) {
    b.kind = BodyDesc::Kind::kEllipse;
    const Node q = n.at("ellipse");
    if (q.size() != 3) fail(q.path, "expected [q11, q12, q22]");
    for (std::size_t i = 0; i < 3; ++i) b.q[i] = q[i].finite();
  } else {
    fail(n.path, "unknown body kind \"" + n.j.begin().key() + "\"");
  }
  try {
    (void)b.build();
  } catch (const Error& e) {
    fail(n.path, e.what());
  }
  return b;
}

json dump_number(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

json dump_body(const BodyDesc& b) {
  switch (b.kind) {
    case BodyDesc::Kind::kDisc: return {{"disc", b.value}};
    case BodyDesc::Kind::kLp: return {{"lp", dump_number(b.value)}};
    case BodyDesc::Kind::kEllipse: return {{"ellipse", {b.q[0], b.q[1], b.q[2]}}};
    case BodyDesc::Kind::kPolygon: {
      json v = json::array();
      for (Vec2 p : b.vertices) v.push_back({p.x, p.y});
      return {{"polygon", v}};
    }
  }
  return nullptr;
}

OuterNorm parse_outer(const Node& n, std::size_t dim) {
  if (n.j.is_string()) {
    const std::string k = n.string();
    if (k == "sum") return OuterNorm::sum();
    if (k == "max") return OuterNorm::max();
    fail(n.path, "unknown outer norm \"" + k + "\" (expected sum, max, power or weighted_euclid)");
  }
  const std::string kind = n.at("kind").string();
  try {
    if (kind == "sum") return OuterNorm::sum();
    if (kind == "max") return OuterNorm::max();
    if (kind == "power") return OuterNorm::power(n.at("p").number());
    if (kind == "weighted_euclid") {
      const Node a = n.at("a");
      std::vector<double> w = a.numbers();
      if (w.size() != dim) fail(a.path, "expected " + std::to_string(dim) + " weights");
      return OuterNorm::weighted_euclid(std::move(w));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail(n.path, e.what());
  }
  fail(n.at("kind").path, "unknown outer norm \"" + kind + "\"");
}

json dump_outer(const OuterNorm& o) {
  switch (o.kind()) {
    case OuterNorm::Kind::kSum: return {{"kind", "sum"}};
    case OuterNorm::Kind::kMax: return {{"kind", "max"}};
    case OuterNorm::Kind::kPower: return {{"kind", "power"}, {"p", o.exponent()}};
    case OuterNorm::Kind::kWeightedEuclid: return {{"kind", "weighted_euclid"}, {"a", o.weights()}};
  }
  return nullptr;
}

LambdaSchedule parse_lambda(const Node& n) {
  if (n.j.is_array()) return LambdaSchedule::constant(n.numbers());
  const Node pieces = n.at("pieces");
  std::vector<LambdaSchedule::Piece> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Node p = pieces[i];
    out.push_back({p.at("start").finite(), p.at("value").numbers()});
  }
  const double repeat = n.has("repeat") ? n.at("repeat").finite() : 0.0;
  try {
    return LambdaSchedule(std::move(out), repeat);
  } catch (const Error& e) {
    fail(n.path, e.what());
  }
}

json dump_lambda(const LambdaSchedule& s) {
  json pieces = json::array();
  for (const auto& p : s.pieces()) pieces.push_back({{"start", p.start}, {"value", p.value}});
  return {{"pieces", pieces}, {"repeat", s.repeat_period()}};
}

ExtremalSpec parse_spec(const Node& n) {
  ExtremalSpec s;
  const Node g = n.at("gamma");
  const std::int64_t gamma = g.integer();
  if (gamma < -1 || gamma > 1) fail(g.path, "gamma must be -1, 0 or 1");
  s.gamma = static_cast<int>(gamma);
  const Node A = n.at("A");
  s.A = A.numbers();
  for (std::size_t i = 0; i < s.A.size(); ++i) {
    if (s.A[i] < 0.0) fail(A[i].path, "A must be nonnegative");
  }
  if (n.has("theta0_polar")) {
    s.theta0_polar = n.at("theta0_polar").numbers();
  } else {
    s.theta0_polar.assign(s.A.size(), 0.0);
  }
  if (n.has("lambda")) s.lambda = parse_lambda(n.at("lambda"));
  if (n.has("theta_free")) {
    const Node f = n.at("theta_free");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Node e = f[i];
      if (e.j.is_null()) {
        s.theta_free.emplace_back();
      } else if (e.j.is_number()) {
        s.theta_free.push_back(AngleSchedule::constant(e.finite()));
      } else {
        AngleSchedule a;
        a.starts = e.at("starts").numbers();
        a.values = e.at("values").numbers();
        if (a.starts.size() != a.values.size() || a.starts.empty()) {
          fail(e.path, "starts and values must be nonempty and of equal length");
        }
        s.theta_free.push_back(std::move(a));
      }
    }
  }
  return s;
}

json dump_spec(const ExtremalSpec& s) {
  json j = {{"gamma", s.gamma}, {"A", s.A}, {"theta0_polar", s.theta0_polar}};
  if (s.lambda) j["lambda"] = dump_lambda(*s.lambda);
  if (!s.theta_free.empty()) {
    json f = json::array();
    for (const auto& a : s.theta_free) {
      if (a) {
        f.push_back({{"starts", a->starts}, {"values", a->values}});
      } else {
        f.push_back(nullptr);
      }
    }
    j["theta_free"] = f;
  }
  return j;
}

}  // namespace

ConvexBody BodyDesc::build() const {
  switch (kind) {
    case Kind::kPolygon: return polygon_from_vertices(vertices);
    case Kind::kLp: return lp_ball(value);
    case Kind::kDisc: return disc(value);
    case Kind::kEllipse: return ellipse(q[0], q[1], q[2]);
  }
  throw Error(ErrorCode::kConfig, "unknown body kind");
}

VelocitySet RunConfig::velocity_set() const {
  if (bodies.empty()) throw Error(ErrorCode::kConfig, "$.velocity_set: missing");
  std::vector<ConvexBody> built;
  for (const BodyDesc& b : bodies) built.push_back(b.build());
  return VelocitySet(std::move(built), outer);
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("syntax error: ") + e.what());
  }
  const Node n{root, "$"};
  if (!root.is_object()) fail("$", "expected an object");
  static const char* const kKnown[] = {"velocity_set", "spec",   "horizon", "samples", "seed",
                                       "outputs",      "wavefront", "body", "matrix"};
  for (const auto& item : root.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || item.key() == k;
    if (!known) fail("$." + item.key(), "unknown field");
  }

  RunConfig c;
  if (n.has("velocity_set")) {
    const Node vs = n.at("velocity_set");
    const Node bodies = vs.at("bodies");
    for (std::size_t i = 0; i < bodies.size(); ++i) c.bodies.push_back(parse_body(bodies[i]));
    if (c.bodies.empty()) fail(bodies.path, "expected at least one body");
    c.outer = vs.has("outer") ? parse_outer(vs.at("outer"), c.bodies.size()) : OuterNorm::sum();
  }
  if (n.has("spec")) {
    c.spec = parse_spec(n.at("spec"));
    if (!c.bodies.empty()) {
      const std::size_t dim = c.bodies.size();
      if (c.spec->A.size() != dim) fail("$.spec.A", "expected " + std::to_string(dim) + " entries");
      if (c.spec->theta0_polar.size() != dim) fail("$.spec.theta0_polar", "expected " + std::to_string(dim) + " entries");
      if (!c.spec->theta_free.empty() && c.spec->theta_free.size() != dim) {
        fail("$.spec.theta_free", "expected " + std::to_string(dim) + " entries");
      }
    }
  }
  if (n.has("horizon")) {
    const Node h = n.at("horizon");
    c.horizon = h.finite();
    if (c.horizon < 0.0) fail(h.path, "horizon must be nonnegative");
  }
  if (n.has("samples")) {
    const Node s = n.at("samples");
    c.samples = s.count();
    if (c.samples < 2) fail(s.path, "need at least 2 samples");
  }
  if (n.has("seed")) c.seed = static_cast<std::uint64_t>(n.at("seed").count());
  if (n.has("outputs")) {
    const Node o = n.at("outputs");
    for (std::size_t i = 0; i < o.size(); ++i) {
      OutputSpec out{o[i].at("format").string(), o[i].at("path").string()};
      if (out.format != "csv" && out.format != "json" && out.format != "svg") {
        fail(o[i].at("format").path, "expected csv, json or svg");
      }
      c.outputs.push_back(std::move(out));
    }
  }
  if (n.has("wavefront")) {
    const Node w = n.at("wavefront");
    WavefrontGrid g;
    if (w.has("theta_steps")) g.theta_steps = w.at("theta_steps").count();
    if (w.has("directions")) {
      const Node d = w.at("directions");
      for (std::size_t i = 0; i < d.size(); ++i) g.directions.push_back(d[i].numbers());
    }
    if (w.has("gammas")) {
      const Node gs = w.at("gammas");
      for (std::size_t i = 0; i < gs.size(); ++i) {
        const std::int64_t v = gs[i].integer();
        if (v != -1 && v != 1) fail(gs[i].path, "wavefront gammas must be -1 or 1");
        g.gammas.push_back(static_cast<int>(v));
      }
    }
    if (w.has("random")) g.random = w.at("random").count();
    c.wavefront = std::move(g);
  }
  if (n.has("body")) c.body = parse_body(n.at("body"));
  if (n.has("matrix")) {
    const Node m = n.at("matrix");
    const std::size_t rows = m.size();
    Eigen::MatrixXd g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      const std::vector<double> row = m[i].numbers();
      if (row.size() != rows) fail(m[i].path, "expected a square matrix");
      for (std::size_t k = 0; k < rows; ++k) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
    c.matrix = std::move(g);
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json j = json::object();
  if (!c.bodies.empty()) {
    json bodies = json::array();
    for (const BodyDesc& b : c.bodies) bodies.push_back(dump_body(b));
    j["velocity_set"] = {{"bodies", bodies}, {"outer", dump_outer(c.outer)}};
  }
  if (c.spec) j["spec"] = dump_spec(*c.spec);
  j["horizon"] = c.horizon;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  if (!c.outputs.empty()) {
    json o = json::array();
    for (const auto& out : c.outputs) o.push_back({{"format", out.format}, {"path", out.path}});
    j["outputs"] = o;
  }
  if (c.wavefront) {
    const WavefrontGrid& g = *c.wavefront;
    j["wavefront"] = {{"theta_steps", g.theta_steps}, {"directions", g.directions}, {"gammas", g.gammas},
                      {"random", g.random}};
  }
  if (c.body) j["body"] = dump_body(*c.body);
  if (c.matrix) {
    json m = json::array();
    for (Eigen::Index i = 0; i < c.matrix->rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < c.matrix->cols(); ++k) row.push_back((*c.matrix)(i, k));
      m.push_back(row);
    }
    j["matrix"] = m;
  }
  return j.dump(2) + "\n";
}

}  // namespace sfh
