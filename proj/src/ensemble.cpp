#include "sfhp/ensemble.hpp"

#include <cmath>
#include <exception>

#include "sfhp/errors.hpp"

#ifdef SFHP_HAVE_OPENMP
#include <omp.h>
#endif

namespace sfhp {

int parallel_threads() {
#ifdef SFHP_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

// Runs body(i) for i in [0, count). Exceptions are collected per index and the one with
// the lowest index is rethrown, so failures match the serial order.
template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto total = static_cast<long long>(count);
#ifdef SFHP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace

std::vector<Trajectory> run_ensemble(const SimConfig& base, std::size_t M, Execution exec) {
  if (M < 1) {
    throw ConfigError("ensemble.size", "at least one trajectory is required");
  }
  validate(base);
  std::vector<Trajectory> out(M);
  for_each_index(M, exec, [&](std::size_t m) {
    SimConfig config = base;
    config.stream = m;
    out[m] = euler_maruyama(config, wiener_path(base.seed, base.h, base.N, m));
  });
  return out;
}

EnsembleSummary summarize(const std::vector<Trajectory>& ensemble, Execution exec) {
  if (ensemble.empty()) {
    throw ConfigError("ensemble.size", "cannot summarize an empty ensemble");
  }
  const auto rows = ensemble.front().q.rows();
  const auto cols = ensemble.front().q.cols();
  for (const auto& t : ensemble) {
    if (t.q.rows() != rows || t.q.cols() != cols) {
      throw GridMismatchError("summarize: trajectories have different shapes");
    }
  }
  EnsembleSummary s;
  s.members = ensemble.size();
  s.times = ensemble.front().times;
  s.mean_q = Matrix::Zero(rows, cols);
  s.var_q = Matrix::Zero(rows, cols);
  s.mean_p = Matrix::Zero(rows, cols);
  s.var_p = Matrix::Zero(rows, cols);
  const double inv_m = 1.0 / static_cast<double>(ensemble.size());

  // Each time index is reduced over members in index order: two-pass mean/variance.
  for_each_index(static_cast<std::size_t>(rows), exec, [&](std::size_t r) {
    const auto row = static_cast<Eigen::Index>(r);
    for (Eigen::Index c = 0; c < cols; ++c) {
      double sq = 0.0;
      double sp = 0.0;
      for (const auto& t : ensemble) {
        sq += t.q(row, c);
        sp += t.p(row, c);
      }
      const double mq = sq * inv_m;
      const double mp = sp * inv_m;
      double vq = 0.0;
      double vp = 0.0;
      for (const auto& t : ensemble) {
        vq += (t.q(row, c) - mq) * (t.q(row, c) - mq);
        vp += (t.p(row, c) - mp) * (t.p(row, c) - mp);
      }
      s.mean_q(row, c) = mq;
      s.mean_p(row, c) = mp;
      s.var_q(row, c) = vq * inv_m;
      s.var_p(row, c) = vp * inv_m;
    }
  });
  return s;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw GridMismatchError("fit_loglog_slope: need at least two matching points");
  }
  const double k = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const SimConfig& base, double T, const std::vector<double>& ladder,
                                   double h_ref, std::size_t seeds, Execution exec) {
  if (ladder.empty()) {
    throw ConfigError("convergence.ladder", "ladder is empty");
  }
  if (seeds < 1) {
    throw ConfigError("convergence.seeds", "at least one seed is required");
  }
  auto steps_for = [T](double h, const char* field) {
    const double exact = T / h;
    const auto N = static_cast<std::size_t>(std::llround(exact));
    if (N < 1 || std::abs(exact - static_cast<double>(N)) > 1e-9 * exact) {
      throw ConfigError(field, "step does not divide the time span");
    }
    return N;
  };
  const std::size_t n_ref = steps_for(h_ref, "convergence.reference_h");
  std::vector<std::size_t> factors;
  for (double h : ladder) {
    const std::size_t n = steps_for(h, "convergence.ladder");
    if (n_ref % n != 0) {
      throw ConfigError("convergence.ladder", "reference grid must refine every ladder step");
    }
    factors.push_back(n_ref / n);
  }

  SimConfig ref_config = base;
  ref_config.h = h_ref;
  ref_config.N = n_ref;
  validate(ref_config);

  const std::size_t levels = ladder.size();
  std::vector<double> errors(seeds * levels, 0.0);
  for_each_index(seeds, exec, [&](std::size_t k) {
    SimConfig cfg = ref_config;
    cfg.stream = k;
    const WienerPath fine_path = wiener_path(base.seed, h_ref, n_ref, k);
    const Trajectory reference = euler_maruyama(cfg, fine_path);
    for (std::size_t l = 0; l < levels; ++l) {
      const WienerPath coarse_path = fine_path.coarsen(factors[l]);
      SimConfig coarse = cfg;
      coarse.h = coarse_path.h;
      coarse.N = coarse_path.N;
      errors[k * levels + l] = strong_error(reference, euler_maruyama(coarse, coarse_path));
    }
  });

  ConvergenceStudy study;
  study.seeds = seeds;
  study.steps = ladder;
  study.mean_error.assign(levels, 0.0);
  for (std::size_t k = 0; k < seeds; ++k) {
    for (std::size_t l = 0; l < levels; ++l) {
      study.mean_error[l] += errors[k * levels + l];
    }
  }
  for (auto& e : study.mean_error) {
    e /= static_cast<double>(seeds);
  }
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    study.local_order.push_back(std::log(study.mean_error[l] / study.mean_error[l + 1]) /
                                std::log(study.steps[l] / study.steps[l + 1]));
  }
  if (levels >= 2) {
    study.fitted_order = fit_loglog_slope(study.steps, study.mean_error);
  }
  return study;
}

}  // namespace sfhp
