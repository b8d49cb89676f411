#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sfhp/action.hpp"
#include "sfhp/frackernel.hpp"
#include "sfhp/sde.hpp"

namespace sfhp::cli {

/// Builtin system selection, addressed by name: samuelson | natural | discounted | metric.
struct SystemSpec {
  std::string name = "natural";
  int dim = 1;
  double rho = 0.0;                   ///< samuelson, discounted
  double a = 0.0;                     ///< samuelson
  std::string potential = "cos";      ///< natural, discounted: cos | quadratic | zero
  double stiffness = 1.0;             ///< quadratic potential k
  std::string noise;                  ///< sine | half_square | zero (default per system)
  double noise_scale = 1.0;
  std::string metric = "euclidean";   ///< euclidean | polar | constant
  double metric_scale = 1.0;          ///< constant metric c
  bool velocity_form = false;         ///< metric: integrate (q, v) instead of (q, p)
};

struct ConvergenceSpec {
  std::vector<double> ladder;
  double reference_h = 0.0;
  std::size_t seeds = 100;
  double T = 0.0;  ///< defaults to N h
  std::array<double, 2> order_band{0.35, 0.65};
};

struct IntegralSpec {
  FracWeight weight;  ///< t0, profile, rho; t_obs unused
  double t = 1.0;
  std::string f = "one";  ///< one | linear | quadratic | cubic | sin | exp
  double rel_tol = 1e-9;
};

struct RunSpec {
  SystemSpec system;
  SimConfig sim;
  FrictionSign friction_sign = FrictionSign::plus;
  std::filesystem::path out_dir = "out";
  bool plots = true;
  std::size_t ensemble_size = 1;
  bool write_paths = true;
  std::optional<ConvergenceSpec> convergence;
  CriticalityOptions action_check;
};

/// Parses a JSON run file. Every failure is a ConfigError naming the JSON field.
RunSpec parse_run_spec(const std::string& json_text);
RunSpec load_run_spec(const std::filesystem::path& file);

IntegralSpec parse_integral_spec(const std::string& json_text);
IntegralSpec load_integral_spec(const std::filesystem::path& file);

std::shared_ptr<const SystemModel> build_system(const SystemSpec& spec);
MetricModel build_metric(const SystemSpec& spec);

/// Integrand selector for the integral command.
std::function<double(double)> integrand(const std::string& name);

}  // namespace sfhp::cli
