#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sfhp/frackernel.hpp"
#include "sfhp/systems.hpp"
#include "sfhp/wiener.hpp"

namespace sfhp {

enum class Formulation { hp_classical, ham_classical, hp_fractional, ham_fractional };

std::string_view to_string(Formulation f);
/// Accepts "hp-classical", "ham-classical", "hp-fractional", "ham-fractional".
Formulation parse_formulation(std::string_view name);
inline bool is_fractional(Formulation f) {
  return f == Formulation::hp_fractional || f == Formulation::ham_fractional;
}

/// Sign of the fractional weight term in the metric velocity form. plus: dv = -(Gamma v v - h v) ds;
/// minus: dv = -(Gamma v v + h v) ds, the sign implied by the momentum equation.
enum class FrictionSign { plus, minus };

struct State {
  double s = 0.0;
  Vector q;
  Vector v;
  Vector p;
};

/// Right-hand side of one SDE step: d(first)/ds, d(second)/ds and the diffusion
/// coefficient multiplying dW on the second component.
struct Drift {
  Vector dq;
  Vector dp;  ///< dp/ds, or dv/ds for the metric velocity form
  Vector noise;
};

Drift hp_drift_classical(const SystemModel& model, const State& state);
Drift hp_drift_fractional(const SystemModel& model, const FracWeight& weight, const State& state);
/// Hamiltonian (Langevin) drift; fractional when `weight` is set.
Drift ham_drift(const SystemModel& model, const std::optional<FracWeight>& weight,
                const State& state);
/// Velocity form for metric Lagrangians: dv = -Gamma v v (+/- h v) ds + g^{-1} dgamma dW.
Drift metric_velocity_drift(const MetricModel& metric, const std::optional<FracWeight>& weight,
                            const State& state, FrictionSign sign = FrictionSign::plus);

struct SimConfig {
  Formulation formulation = Formulation::hp_classical;
  std::shared_ptr<const SystemModel> system;
  std::optional<FracWeight> weight;  ///< required by the fractional formulations
  double t0 = 0.0;
  double h = 1e-3;
  std::size_t N = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Vector q0;
  std::optional<Vector> v0;  ///< exactly one of v0 / p0
  std::optional<Vector> p0;

  double t_end() const { return t0 + static_cast<double>(N) * h; }
};

/// Throws ConfigError naming the offending field.
void validate(const SimConfig& config);

struct Trajectory {
  Vector times;  ///< N+1 grid points, times[n] = fma(n, h, t0)
  Matrix q;      ///< (N+1) x n
  Matrix v;
  Matrix p;
  Vector dW;  ///< N increments
  Formulation formulation = Formulation::hp_classical;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string system_name;

  std::size_t steps() const { return static_cast<std::size_t>(dW.size()); }
  int dim() const { return static_cast<int>(q.cols()); }
};

/// Explicit Euler-Maruyama (Ito, left-point noise):
///   x_{n+1} = x_n + h drift(s_n, x_n) + noise(s_n, x_n) dW_n, x = (q, p),
/// then v_{n+1} is recovered from p_{n+1} by the inverse Legendre map.
/// Throws NonFiniteStateError with the step index on NaN/Inf.
Trajectory euler_maruyama(const SimConfig& config, const WienerPath& path);

/// Euler-Maruyama on (q, v) with the metric velocity drift; p = g(q) v is filled in.
Trajectory integrate_metric_velocity(const MetricModel& metric,
                                     const std::optional<FracWeight>& weight, FrictionSign sign,
                                     double t0, const Vector& q0, const Vector& v0,
                                     const WienerPath& path);

/// Max over the coarse grid of |(q, p)_coarse - (q, p)_fine|. The fine step must divide
/// the coarse step by an integer factor over the same time span.
double strong_error(const Trajectory& fine, const Trajectory& coarse);

}  // namespace sfhp
