#pragma once

#include <cstdint>
#include <vector>

#include "sfhp/sde.hpp"

namespace sfhp {

/// Serial is the reference implementation; Parallel distributes independent work items
/// over OpenMP threads and must produce bit-identical results.
enum class Execution { serial, parallel };

/// Number of threads the parallel kernels will use (1 without OpenMP).
int parallel_threads();

/// M trajectories of `base`, trajectory m driven by wiener_path(base.seed, h, N, stream m).
std::vector<Trajectory> run_ensemble(const SimConfig& base, std::size_t M,
                                     Execution exec = Execution::parallel);

/// Per-time mean and population variance (divide by M) of q and p.
struct EnsembleSummary {
  Vector times;
  Matrix mean_q, var_q, mean_p, var_p;  ///< (N+1) x n
  std::size_t members = 0;
};

EnsembleSummary summarize(const std::vector<Trajectory>& ensemble,
                          Execution exec = Execution::parallel);

/// Strong-error ladder: for every seed a reference path at step h_ref is generated, the
/// coarse paths are sums of its increments, and errors are averaged over seeds.
struct ConvergenceStudy {
  std::vector<double> steps;        ///< ladder, coarse to fine
  std::vector<double> mean_error;   ///< mean over seeds of strong_error(reference, level)
  std::vector<double> local_order;  ///< log2(e_k / e_{k+1}), one fewer than steps
  double fitted_order = 0.0;        ///< least-squares slope of log e against log h
  std::size_t seeds = 0;
};

/// `ladder` lists step sizes each an integer multiple of h_ref; the config's h and N
/// are replaced so every level spans [t0, t0 + T].
ConvergenceStudy convergence_study(const SimConfig& base, double T, const std::vector<double>& ladder,
                                   double h_ref, std::size_t seeds,
                                   Execution exec = Execution::parallel);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sfhp
