#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <unistd.h>
#include <sstream>

#include "doctest.h"
#include "sfh/commands.hpp"

using namespace sfh;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("sfh_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string read(const std::string& name) const {
    std::ifstream f(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  int run(const std::string& cmd, const std::string& config, const std::string& out, std::string* log = nullptr) const {
    CommandOptions o;
    if (!config.empty()) o.config_path = write(config + ".json", config_text.at(config));
    o.out_dir = (dir / out).string();
    std::ostringstream l, e;
    const int code = run_command(cmd, o, l, e);
    if (log) *log = l.str() + e.str();
    return code;
  }
  std::map<std::string, std::string> config_text;
};

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  while (std::getline(ss, line)) {
    std::vector<double> r;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) r.push_back(std::stod(cell));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("geodesic and wavefront commands") {
  Workspace w;
  w.config_text["disc"] = R"({"velocity_set": {"bodies": [{"disc": 1}], "outer": {"kind": "power", "p": 2}},
    "spec": {"gamma": 1, "A": [1], "theta0_polar": [0]}, "horizon": 6.283185307179586, "samples": 1001,
    "wavefront": {"theta_steps": 24, "random": 10}})";
  w.config_text["ray"] = R"({"velocity_set": {"bodies": [{"disc": 1}]},
    "spec": {"gamma": 0, "A": [1], "theta0_polar": [0]}, "horizon": 5, "samples": 11})";
  w.config_text["zero"] = R"({"velocity_set": {"bodies": [{"disc": 1}]},
    "spec": {"gamma": 1, "A": [1], "theta0_polar": [0]}, "horizon": 0, "wavefront": {"theta_steps": 8}})";
  w.config_text["diamond"] = R"({"velocity_set": {"bodies": ["diamond"]},
    "spec": {"gamma": 1, "A": [1], "theta0_polar": [0]}, "horizon": 2.3, "wavefront": {"theta_steps": 64}})";

  std::string log;
  CHECK(w.run("geodesic", "disc", "g1", &log) == kExitOk);
  CHECK(log.find("endpoint 0 0 3.1415926535897931") != std::string::npos);
  CHECK(w.read("g1/geodesic.csv").rfind("t,x1,y1,z\n", 0) == 0);
  CHECK(w.read("g1/geodesic.svg").find("<polyline") != std::string::npos);
  CHECK(w.run("geodesic", "disc", "g2") == kExitOk);
  CHECK(w.read("g1/geodesic.csv") == w.read("g2/geodesic.csv"));
  CHECK(w.read("g1/geodesic.json") == w.read("g2/geodesic.json"));

  CHECK(w.run("geodesic", "ray", "r", &log) == kExitOk);
  CHECK(log.find("endpoint 5 0 0") != std::string::npos);

  CHECK(w.run("wavefront", "disc", "w1") == kExitOk);
  CHECK(w.run("wavefront", "disc", "w2") == kExitOk);
  CHECK(w.read("w1/wavefront.csv") == w.read("w2/wavefront.csv"));
  const auto rows = csv_rows(w.read("w1/wavefront.csv"));
  CHECK(rows.size() == 34);
  for (const auto& r : rows) {
    // gamma, A1, theta1, x1, y1, z
    CHECK(std::fabs(r[3]) < 1e-9);
    CHECK(std::fabs(r[4]) < 1e-9);
    if (std::fabs(r[1] - 1) < 1e-15) CHECK(std::fabs(r[5] - 3.141592653589793) < 1e-9);
  }

  CHECK(w.run("wavefront", "zero", "z") == kExitOk);
  for (const auto& r : csv_rows(w.read("z/wavefront.csv"))) {
    CHECK(r[3] == 0.0);
    CHECK(r[4] == 0.0);
    CHECK(r[5] == 0.0);
  }

  // Rotating theta°_0 by a quarter period rotates the diamond endpoints by 90 degrees.
  CHECK(w.run("wavefront", "diamond", "d") == kExitOk);
  const auto d = csv_rows(w.read("d/wavefront.csv"));
  REQUIRE(d.size() == 64);
  for (std::size_t k = 0; k < 64; ++k) {
    const auto& a = d[k];
    const auto& b = d[(k + 16) % 64];
    CHECK(std::fabs(b[3] + a[4]) < 1e-12);
    CHECK(std::fabs(b[4] - a[3]) < 1e-12);
    CHECK(std::fabs(b[5] - a[5]) < 1e-12);
  }
}

TEST_CASE("trig, polar and normalform commands") {
  Workspace w;
  w.config_text["diamond"] = R"({"body": "diamond", "samples": 401})";
  w.config_text["lp4"] = R"({"body": {"lp": 4}, "samples": 257})";
  w.config_text["id"] = R"({"matrix": [[1, 0], [0, 1]]})";
  w.config_text["quarter"] = R"({"matrix": [[0.25, 0], [0, 0.25]]})";
  CHECK(w.run("trig", "diamond", "t") == kExitOk);
  for (const auto& r : csv_rows(w.read("t/trig.csv"))) CHECK(std::fabs(r[1] - (std::fabs(r[0] - 2) - 1)) < 1e-12);
  CHECK(w.run("polar", "lp4", "p") == kExitOk);
  CHECK(w.read("p/polar.json").find("\"p\": 1.3333333333333333") != std::string::npos);
  std::string log;
  CHECK(w.run("normalform", "id", "n", &log) == kExitOk);
  CHECK(log.find("a 1\n") != std::string::npos);
  CHECK(w.run("normalform", "quarter", "q", &log) == kExitOk);
  CHECK(log.find("a 2\n") != std::string::npos);
}

TEST_CASE("verify command and exit codes") {
  Workspace w;
  w.config_text["bad"] = R"({"velocity_set": {"bodies": [{"disc": 0}]}})";
  w.config_text["none"] = R"({"samples": 10})";
  CHECK(w.run("geodesic", "bad", "b") == kExitConfig);
  CHECK(w.run("geodesic", "none", "b") == kExitConfig);
  CommandOptions o;
  o.out_dir = (w.dir / "v").string();
  o.suite = "lp,normalform";
  std::ostringstream log, err;
  CHECK(run_command("verify", o, log, err) == kExitOk);
  CHECK(w.read("v/verify.json").find("\"pass\": true") != std::string::npos);
  o.suite = "extremal";
  o.fault = "z-scale";
  CHECK(run_command("verify", o, log, err) == kExitValidation);
  CHECK(log.str().find("horizontality") != std::string::npos);
  o.suite = "nope";
  o.fault.clear();
  CHECK(run_command("verify", o, log, err) == kExitConfig);
}
