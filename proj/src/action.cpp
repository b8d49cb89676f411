#include "sfhp/action.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sfhp/errors.hpp"

namespace sfhp {

PathVariation::PathVariation(Matrix dq, Matrix dv, Matrix dp)
    : dq_(std::move(dq)), dv_(std::move(dv)), dp_(std::move(dp)) {
  if (dq_.rows() < 2 || dv_.rows() != dq_.rows() || dp_.rows() != dq_.rows() ||
      dv_.cols() != dq_.cols() || dp_.cols() != dq_.cols()) {
    throw GridMismatchError("PathVariation: dq, dv and dp must share an (N+1) x n shape");
  }
  if (!(dq_.row(0).cwiseAbs().maxCoeff() == 0.0) ||
      !(dq_.row(dq_.rows() - 1).cwiseAbs().maxCoeff() == 0.0)) {
    throw ConfigError("variation.dq", "dq must vanish at both endpoints");
  }
}

PathVariation PathVariation::scaled(double factor) const {
  return PathVariation(factor * dq_, factor * dv_, factor * dp_);
}

PathVariation random_variation(const Vector& times, int n, std::uint64_t seed,
                               std::uint64_t index) {
  constexpr int kModes = 5;
  const auto rows = times.size();
  const double a = times(0);
  const double b = times(rows - 1);
  Matrix dq(rows, n), dv(rows, n), dp(rows, n);
  std::uint64_t counter = 0;
  auto coefficients = [&] {
    std::array<double, kModes> c{};
    double norm = 0.0;
    for (auto& x : c) {
      x = 2.0 * counter_uniform(seed, index, counter++) - 1.0;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : c) {
      x /= norm;
    }
    return c;
  };
  for (int i = 0; i < n; ++i) {
    const auto cq = coefficients();
    const auto cv = coefficients();
    const auto cp = coefficients();
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double x = (times(r) - a) / (b - a);
      double sq = 0.0, sv = 0.0, sp = 0.0;
      for (int m = 1; m <= kModes; ++m) {
        const double sine = std::sin(m * std::numbers::pi * x);
        const double cosine = std::cos((m - 1) * std::numbers::pi * x);
        sq += cq[m - 1] * sine;
        sv += cv[m - 1] * cosine;
        sp += cp[m - 1] * cosine;
      }
      dq(r, i) = sq;
      dv(r, i) = sv;
      dp(r, i) = sp;
    }
  }
  // sin(m pi) is not exactly zero in floating point
  dq.row(0).setZero();
  dq.row(rows - 1).setZero();
  return PathVariation(std::move(dq), std::move(dv), std::move(dp));
}

namespace {

double action_sum(const Vector& times, const Matrix& q, const Matrix& v, const Matrix& p,
                  const SystemModel& model, const std::optional<FracWeight>& weight,
                  const WienerPath& wiener) {
  const auto N = static_cast<Eigen::Index>(wiener.N);
  if (q.rows() != N + 1 || times.size() != N + 1) {
    throw GridMismatchError("discrete_action: path and Wiener grids differ");
  }
  const double h = wiener.h;
  double lebesgue = 0.0;
  double ito = 0.0;
  for (Eigen::Index k = 0; k < N; ++k) {
    const double s = times(k);
    const double g = weight ? g_weight(*weight, s) : 1.0;
    const Vector qk = q.row(k).transpose();
    const Vector vk = v.row(k).transpose();
    const Vector pk = p.row(k).transpose();
    const Vector rate = (q.row(k + 1) - q.row(k)).transpose() / h;
    lebesgue += (model.lagrangian(s, qk, vk) + pk.dot(rate - vk)) * g * h;
    ito += model.gamma(qk) * g * wiener.increments[static_cast<std::size_t>(k)];
  }
  return lebesgue + ito;
}

}  // namespace

double discrete_action(const Trajectory& path, const SystemModel& model,
                       const std::optional<FracWeight>& weight, const WienerPath& wiener) {
  return action_sum(path.times, path.q, path.v, path.p, model, weight, wiener);
}

double action_differential(const Trajectory& path, const PathVariation& variation,
                           const SystemModel& model, const std::optional<FracWeight>& weight,
                           const WienerPath& wiener, double eps) {
  if (variation.dq().rows() != path.q.rows() || variation.dq().cols() != path.q.cols()) {
    throw GridMismatchError("action_differential: variation shape differs from the path");
  }
  const double plus = action_sum(path.times, path.q + eps * variation.dq(),
                                 path.v + eps * variation.dv(), path.p + eps * variation.dp(),
                                 model, weight, wiener);
  const double minus = action_sum(path.times, path.q - eps * variation.dq(),
                                  path.v - eps * variation.dv(), path.p - eps * variation.dp(),
                                  model, weight, wiener);
  return (plus - minus) / (2.0 * eps);
}

std::string CriticalityReport::to_text() const {
  std::ostringstream out;
  out << "criticality check: system=" << system << " formulation=" << formulation << "\n";
  out.precision(6);
  for (std::size_t l = 0; l < steps.size(); ++l) {
    out << "  h=" << std::scientific << steps[l] << "  max|dA|=" << max_abs_differential[l];
    if (l > 0) {
      out << "  ratio=" << std::fixed << ratios[l - 1];
    }
    out << "\n";
  }
  out << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

CriticalityReport criticality_report(const SimConfig& config, const CriticalityOptions& options) {
  validate(config);
  if (options.levels < 2) {
    throw ConfigError("action_check.levels", "at least two refinement levels are required");
  }
  if (options.n_variations < 1) {
    throw ConfigError("action_check.n_variations", "at least one variation is required");
  }
  const SystemModel& model = *config.system;
  const std::size_t finest = std::size_t{1} << (options.levels - 1);
  const WienerPath fine_path =
      wiener_path(config.seed, config.h / static_cast<double>(finest), config.N * finest,
                  config.stream);

  auto integrator_model = std::make_shared<SystemModel>(model);
  if (options.flip_drift) {
    auto dL_dq = model.dL_dq;
    integrator_model->dL_dq = [dL_dq](double s, const Vector& q, const Vector& v) -> Vector {
      return -dL_dq(s, q, v);
    };
    if (model.dH_dq) {
      auto dH_dq = model.dH_dq;
      integrator_model->dH_dq = [dH_dq](double s, const Vector& q, const Vector& p) -> Vector {
        return -dH_dq(s, q, p);
      };
    }
  }

  CriticalityReport report;
  report.system = model.name;
  report.formulation = std::string(to_string(config.formulation));
  const std::optional<FracWeight> weight =
      is_fractional(config.formulation) ? config.weight : std::nullopt;
  for (int level = 0; level < options.levels; ++level) {
    const std::size_t factor = finest >> level;
    const WienerPath path = fine_path.coarsen(factor);
    SimConfig cfg = config;
    cfg.system = integrator_model;
    cfg.h = path.h;
    cfg.N = path.N;
    const Trajectory traj = euler_maruyama(cfg, path);
    double worst = 0.0;
    for (std::size_t k = 0; k < options.n_variations; ++k) {
      const PathVariation var = random_variation(traj.times, model.n, options.variation_seed, k);
      worst = std::max(worst, std::abs(action_differential(traj, var, model, weight, path)));
    }
    report.steps.push_back(path.h);
    report.max_abs_differential.push_back(worst);
  }
  report.pass = true;
  for (std::size_t l = 0; l + 1 < report.steps.size(); ++l) {
    const double ratio = report.max_abs_differential[l] / report.max_abs_differential[l + 1];
    report.ratios.push_back(ratio);
    if (!(ratio >= options.pass_ratio)) {
      report.pass = false;
    }
  }
  return report;
}

}  // namespace sfhp
