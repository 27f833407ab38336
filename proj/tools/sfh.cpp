// sfh: convex trigonometry and sub-Finsler extremals on Heisenberg groups.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sfh/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Convex trigonometry and sub-Finsler extremals on Heisenberg groups"};
  app.require_subcommand(1);
  app.fallthrough();

  sfh::CommandOptions opts;
  std::string config;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  app.add_option("--config", config, "JSON run configuration");
  app.add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config)");
  auto* samples_opt = app.add_option("--samples", samples, "sample count (overrides the config)");

  app.add_subcommand("trig", "cos/sin table and plot of a body");
  app.add_subcommand("polar", "polar body description");
  app.add_subcommand("geodesic", "synthesize one extremal");
  app.add_subcommand("wavefront", "endpoints over a grid of extremals");
  app.add_subcommand("normalform", "Williamson normal form of a metric");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", opts.suite, "all, or a comma list of trig, lp, extremal, oracle, normalform")
      ->capture_default_str();
  verify->add_option("--fault", opts.fault, "inject a fault: z-scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sfh::kExitConfig;
  }
  if (!config.empty()) opts.config_path = config;
  if (*seed_opt) opts.seed = seed;
  if (*samples_opt) opts.samples = samples;
  const std::string command = app.get_subcommands().front()->get_name();
  return sfh::run_command(command, opts, std::cout, std::cerr);
}
