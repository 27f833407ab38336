#pragma once

// Quick invariant suites behind the `verify` command. Each check records the
// measured value and its tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace sfh {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
};

struct VerifyOptions {
  std::string selector = "all";  // all, or a comma list of trig, lp, extremal, oracle, normalform
  std::uint64_t seed = 0;
  bool fault_z_scale = false;    // doubles z on sampled trajectories before checking
};

/// Throws Config for an unknown suite name.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

/// Machine-readable report: {"pass": bool, "suites": [...]}.
std::string verify_report_json(const std::vector<SuiteResult>& suites);

}  // namespace sfh
