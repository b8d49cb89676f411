#include "sfhp/sde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfhp/errors.hpp"

namespace sfhp {

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::hp_classical:
      return "hp-classical";
    case Formulation::ham_classical:
      return "ham-classical";
    case Formulation::hp_fractional:
      return "hp-fractional";
    case Formulation::ham_fractional:
      return "ham-fractional";
  }
  return "unknown";
}

Formulation parse_formulation(std::string_view name) {
  for (auto f : {Formulation::hp_classical, Formulation::ham_classical, Formulation::hp_fractional,
                 Formulation::ham_fractional}) {
    if (to_string(f) == name) {
      return f;
    }
  }
  throw ConfigError("formulation", "unknown formulation '" + std::string(name) + "'");
}

// Drifts ---------------------------------------------------------------------

Drift hp_drift_classical(const SystemModel& model, const State& state) {
  return {state.v, model.dL_dq(state.s, state.q, state.v), model.dgamma_dq(state.q)};
}

Drift hp_drift_fractional(const SystemModel& model, const FracWeight& weight, const State& state) {
  const double hw = h_weight(weight, state.s);
  return {state.v, model.dL_dq(state.s, state.q, state.v) - hw * state.p,
          model.dgamma_dq(state.q)};
}

Drift ham_drift(const SystemModel& model, const std::optional<FracWeight>& weight,
                const State& state) {
  Drift d;
  if (model.dH_dp && model.dH_dq) {
    d.dq = model.dH_dp(state.s, state.q, state.p);
    d.dp = -model.dH_dq(state.s, state.q, state.p);
  } else {
    // dH/dp = v*, dH/dq = -dL/dq evaluated at v*
    const Vector v = inverse_legendre(model, state.s, state.q, state.p);
    d.dq = v;
    d.dp = model.dL_dq(state.s, state.q, v);
  }
  if (weight) {
    d.dp -= h_weight(*weight, state.s) * state.p;
  }
  d.noise = model.dgamma_dq(state.q);
  return d;
}

Drift metric_velocity_drift(const MetricModel& metric, const std::optional<FracWeight>& weight,
                            const State& state, FrictionSign sign) {
  const Christoffel gamma = christoffel(metric, state.q);
  const int n = metric.n;
  Vector accel(n);
  for (int i = 0; i < n; ++i) {
    accel(i) = -state.v.dot(gamma[static_cast<std::size_t>(i)] * state.v);
  }
  if (weight) {
    const double hw = h_weight(*weight, state.s);
    if (sign == FrictionSign::plus) {
      accel += hw * state.v;
    } else {
      accel -= hw * state.v;
    }
  }
  return {state.v, accel, inverse_metric(metric, state.q) * metric.dgamma_dq(state.q)};
}

// Configuration ----------------------------------------------------------------

void validate(const SimConfig& config) {
  if (!config.system) {
    throw ConfigError("system", "no system model");
  }
  if (!(config.h > 0.0) || !std::isfinite(config.h)) {
    throw ConfigError("h", "time step must be positive and finite");
  }
  if (config.N < 1) {
    throw ConfigError("N", "at least one step is required");
  }
  const int n = config.system->n;
  if (config.q0.size() != n) {
    throw ConfigError("q0", "expected " + std::to_string(n) + " components");
  }
  if (config.v0.has_value() == config.p0.has_value()) {
    throw ConfigError("v0/p0", "exactly one of v0 and p0 must be given");
  }
  if (config.v0 && config.v0->size() != n) {
    throw ConfigError("v0", "expected " + std::to_string(n) + " components");
  }
  if (config.p0 && config.p0->size() != n) {
    throw ConfigError("p0", "expected " + std::to_string(n) + " components");
  }
  if (is_fractional(config.formulation)) {
    if (!config.weight) {
      throw ConfigError("weight", "fractional formulations need a fractional weight");
    }
    const FracWeight& w = *config.weight;
    if (!(w.sing_eps > 0.0)) {
      throw ConfigError("weight.sing_eps", "guard radius must be positive");
    }
    if (!(w.rho >= 0.0)) {
      throw ConfigError("weight.rho", "discount rate must be non-negative");
    }
    const double t_end = config.t_end();
    if (w.t_obs >= config.t0 - w.sing_eps && w.t_obs <= t_end + w.sing_eps) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "observer time " << w.t_obs << " lies within the simulated interval [" << config.t0
          << ", " << t_end << "] (guard " << w.sing_eps << ")";
      throw ConfigError("weight.t_obs", msg.str());
    }
    // alpha is affine or constant, so checking the interval ends covers the grid
    try {
      alpha_eval(w.profile, config.t0 - w.t_obs);
      alpha_eval(w.profile, t_end - w.t_obs);
    } catch (const RangeError& e) {
      throw ConfigError("weight.alpha", e.what());
    }
  }
}

// Integrators -------------------------------------------------------------------

namespace {

void check_path(const SimConfig& config, const WienerPath& path) {
  if (path.N != config.N) {
    throw GridMismatchError("Wiener path has " + std::to_string(path.N) + " steps, config has " +
                            std::to_string(config.N));
  }
  if (path.h != config.h) {
    throw GridMismatchError("Wiener path step differs from the configured step");
  }
}

bool all_finite(const Vector& x) { return x.allFinite(); }

Trajectory allocate(std::size_t N, int n, double t0, double h, const WienerPath& path) {
  Trajectory traj;
  traj.times.resize(static_cast<Eigen::Index>(N + 1));
  for (std::size_t k = 0; k <= N; ++k) {
    traj.times(static_cast<Eigen::Index>(k)) = std::fma(static_cast<double>(k), h, t0);
  }
  traj.q.resize(static_cast<Eigen::Index>(N + 1), n);
  traj.v.resize(static_cast<Eigen::Index>(N + 1), n);
  traj.p.resize(static_cast<Eigen::Index>(N + 1), n);
  traj.dW = Eigen::Map<const Vector>(path.increments.data(), static_cast<Eigen::Index>(N));
  traj.seed = path.seed;
  traj.stream = path.stream;
  return traj;
}

}  // namespace

Trajectory euler_maruyama(const SimConfig& config, const WienerPath& path) {
  validate(config);
  check_path(config, path);
  const SystemModel& model = *config.system;
  const std::size_t N = config.N;
  const double h = config.h;

  Trajectory traj = allocate(N, model.n, config.t0, h, path);
  traj.formulation = config.formulation;
  traj.system_name = model.name;

  State state;
  state.s = config.t0;
  state.q = config.q0;
  if (config.p0) {
    state.p = *config.p0;
    state.v = inverse_legendre(model, state.s, state.q, state.p);
  } else {
    state.v = *config.v0;
    state.p = legendre_p(model, state.s, state.q, state.v);
  }
  traj.q.row(0) = state.q.transpose();
  traj.v.row(0) = state.v.transpose();
  traj.p.row(0) = state.p.transpose();

  for (std::size_t k = 0; k < N; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    state.s = traj.times(row);
    Drift d;
    switch (config.formulation) {
      case Formulation::hp_classical:
        d = hp_drift_classical(model, state);
        break;
      case Formulation::hp_fractional:
        d = hp_drift_fractional(model, *config.weight, state);
        break;
      case Formulation::ham_classical:
        d = ham_drift(model, std::nullopt, state);
        break;
      case Formulation::ham_fractional:
        d = ham_drift(model, config.weight, state);
        break;
    }
    const double dw = path.increments[k];
    state.q = state.q + h * d.dq;
    state.p = state.p + h * d.dp + dw * d.noise;
    state.s = traj.times(row + 1);
    if (!all_finite(state.q) || !all_finite(state.p)) {
      throw NonFiniteStateError("non-finite state at step " + std::to_string(k + 1), k + 1);
    }
    state.v = inverse_legendre(model, state.s, state.q, state.p);
    if (!all_finite(state.v)) {
      throw NonFiniteStateError("non-finite velocity at step " + std::to_string(k + 1), k + 1);
    }
    traj.q.row(row + 1) = state.q.transpose();
    traj.v.row(row + 1) = state.v.transpose();
    traj.p.row(row + 1) = state.p.transpose();
  }
  return traj;
}

Trajectory integrate_metric_velocity(const MetricModel& metric,
                                     const std::optional<FracWeight>& weight, FrictionSign sign,
                                     double t0, const Vector& q0, const Vector& v0,
                                     const WienerPath& path) {
  if (q0.size() != metric.n || v0.size() != metric.n) {
    throw ConfigError("q0/v0", "dimension does not match the metric");
  }
  const std::size_t N = path.N;
  const double h = path.h;
  if (weight) {
    const double t_end = t0 + static_cast<double>(N) * h;
    if (weight->t_obs >= t0 - weight->sing_eps && weight->t_obs <= t_end + weight->sing_eps) {
      throw ConfigError("weight.t_obs", "observer time lies within the simulated interval");
    }
  }
  Trajectory traj = allocate(N, metric.n, t0, h, path);
  traj.formulation = weight ? Formulation::hp_fractional : Formulation::hp_classical;
  traj.system_name = "metric-velocity(" + metric.name + ")";

  State state{t0, q0, v0, Vector()};
  traj.q.row(0) = q0.transpose();
  traj.v.row(0) = v0.transpose();
  traj.p.row(0) = (metric.g(q0) * v0).transpose();
  for (std::size_t k = 0; k < N; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    state.s = traj.times(row);
    const Drift d = metric_velocity_drift(metric, weight, state, sign);
    state.q = state.q + h * d.dq;
    state.v = state.v + h * d.dp + path.increments[k] * d.noise;
    if (!all_finite(state.q) || !all_finite(state.v)) {
      throw NonFiniteStateError("non-finite state at step " + std::to_string(k + 1), k + 1);
    }
    traj.q.row(row + 1) = state.q.transpose();
    traj.v.row(row + 1) = state.v.transpose();
    traj.p.row(row + 1) = (metric.g(state.q) * state.v).transpose();
  }
  return traj;
}

double strong_error(const Trajectory& fine, const Trajectory& coarse) {
  const std::size_t nf = fine.steps();
  const std::size_t nc = coarse.steps();
  if (nc == 0 || nf % nc != 0) {
    throw GridMismatchError("strong_error: fine step count " + std::to_string(nf) +
                            " is not a multiple of the coarse one " + std::to_string(nc));
  }
  if (fine.dim() != coarse.dim()) {
    throw GridMismatchError("strong_error: state dimensions differ");
  }
  const std::size_t factor = nf / nc;
  double worst = 0.0;
  for (std::size_t k = 0; k <= nc; ++k) {
    const auto ic = static_cast<Eigen::Index>(k);
    const auto ifine = static_cast<Eigen::Index>(k * factor);
    const double tc = coarse.times(ic);
    if (std::abs(fine.times(ifine) - tc) > 1e-9 * std::max(1.0, std::abs(tc))) {
      throw GridMismatchError("strong_error: grids are not nested");
    }
    const double dq = (coarse.q.row(ic) - fine.q.row(ifine)).squaredNorm();
    const double dp = (coarse.p.row(ic) - fine.p.row(ifine)).squaredNorm();
    worst = std::max(worst, std::sqrt(dq + dp));
  }
  return worst;
}

}  // namespace sfhp
