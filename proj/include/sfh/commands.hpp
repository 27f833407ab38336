#pragma once

// The subcommands behind the sfh command-line tool. Each returns the process
// exit code: 0 ok, 1 validation failure, 2 config error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "sfh/config.hpp"

namespace sfh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;

struct CommandOptions {
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string suite = "all";    // verify
  std::string fault;            // verify: "" or "z-scale"
};

int cmd_trig(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_polar(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_geodesic(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_wavefront(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_normalform(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& log);

/// Loads the config (when given), applies --seed/--samples and dispatches.
/// Errors are reported on `err` and mapped to exit codes.
int run_command(const std::string& command, const CommandOptions& options, std::ostream& log, std::ostream& err);

}  // namespace sfh
