#include <iostream>

#include <CLI11.hpp>

#include "sfhp/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace sfhp::cli;
  CLI::App app{"Stochastic generalized-fractional Hamilton-Pontryagin simulator"};
  app.require_subcommand(1);

  CommandOptions options;
  std::string out_dir;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config, "JSON run file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--seed", seed, "64-bit seed (overrides the config seed)");
    cmd->add_flag("--no-plots", options.no_plots, "skip SVG plot emission");
  };

  auto* simulate = app.add_subcommand("simulate", "integrate one trajectory, write CSV and plots");
  auto* ensemble = app.add_subcommand("ensemble", "integrate M trajectories and summarize them");
  auto* convergence = app.add_subcommand("convergence", "strong-error ladder and fitted order");
  auto* action = app.add_subcommand("action-check", "variational criticality under refinement");
  auto* integral = app.add_subcommand("integral", "generalized fractional Riemann-Liouville integral");
  for (auto* cmd : {simulate, ensemble, convergence, action, integral}) {
    add_common(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  for (auto* cmd : {simulate, ensemble, convergence, action, integral}) {
    if (cmd->count("--out")) options.out = out_dir;
    if (cmd->count("--seed")) options.seed = seed;
  }

  if (*simulate) return cmd_simulate(options, std::cout, std::cerr);
  if (*ensemble) return cmd_ensemble(options, std::cout, std::cerr);
  if (*convergence) return cmd_convergence(options, std::cout, std::cerr);
  if (*action) return cmd_action_check(options, std::cout, std::cerr);
  return cmd_integral(options, std::cout, std::cerr);
}
