#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfhp/sde.hpp"

namespace sfhp {

/// Variation (dq, dv, dp) of a discrete path; (N+1) x n each. dq must vanish at both
/// ends, which the constructor enforces exactly.
class PathVariation {
 public:
  PathVariation(Matrix dq, Matrix dv, Matrix dp);

  const Matrix& dq() const { return dq_; }
  const Matrix& dv() const { return dv_; }
  const Matrix& dp() const { return dp_; }

  PathVariation scaled(double factor) const;

 private:
  Matrix dq_, dv_, dp_;
};

/// Random smooth variation on the grid `times` (first and last entries span [a, b]):
/// dq^i = sum_{m=1..5} c_m sin(m pi x), dv^i and dp^i = sum_{m=1..5} c_m cos((m-1) pi x),
/// x = (s - a)/(b - a), coefficients uniform in [-1, 1] scaled to unit Euclidean norm.
/// Coefficients depend only on (seed, index, component), so the same continuous
/// variation is sampled on every grid.
PathVariation random_variation(const Vector& times, int n, std::uint64_t seed, std::uint64_t index);

/// Discrete stochastic HP action of (q, v, p):
///   sum_n [L(s_n, q_n, v_n) + <p_n, (q_{n+1} - q_n)/h - v_n>] g_n h + sum_n gamma(q_n) g_n dW_n
/// with g_n = 1 (classical) or g_t(s_n) (fractional), all evaluated at the left point.
double discrete_action(const Trajectory& path, const SystemModel& model,
                       const std::optional<FracWeight>& weight, const WienerPath& wiener);

/// Centered difference (A(path + eps var) - A(path - eps var)) / (2 eps) on a frozen
/// Wiener path.
double action_differential(const Trajectory& path, const PathVariation& variation,
                           const SystemModel& model, const std::optional<FracWeight>& weight,
                           const WienerPath& wiener, double eps = 1e-6);

struct CriticalityOptions {
  std::size_t n_variations = 20;
  std::uint64_t variation_seed = 1;
  int levels = 3;            ///< h, h/2, h/4, ...
  double pass_ratio = 1.5;
  bool flip_drift = false;   ///< negative control: integrate with dL/dq negated
};

struct CriticalityReport {
  std::string system;
  std::string formulation;
  std::vector<double> steps;
  std::vector<double> max_abs_differential;
  std::vector<double> ratios;
  bool pass = false;

  std::string to_text() const;
};

/// Integrates the configuration at h, h/2, ... on one Wiener path (finest level drawn,
/// coarser ones summed) and measures max |dA| over random admissible variations.
/// Passes iff every ratio between successive levels is at least pass_ratio.
CriticalityReport criticality_report(const SimConfig& config, const CriticalityOptions& options = {});

}  // namespace sfhp
