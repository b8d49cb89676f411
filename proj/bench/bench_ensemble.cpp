// Serial reference vs OpenMP kernels for the embarrassingly parallel workloads:
// ensemble integration, per-time summary statistics and the strong-error ladder.

#include <benchmark/benchmark.h>

#include <memory>

#include "sfhp/ensemble.hpp"

namespace {

sfhp::SimConfig pendulum(std::size_t N) {
  sfhp::SimConfig c;
  c.formulation = sfhp::Formulation::hp_fractional;
  c.system = std::make_shared<const sfhp::SystemModel>(
      sfhp::builtin_natural(sfhp::Potential::cosine(1), sfhp::NoisePotential::sine(1)));
  c.weight = sfhp::FracWeight{sfhp::AlphaProfile::constant(0.6), 0.0, 0.8, 0.0, 1e-8};
  c.h = 0.7 / static_cast<double>(N);
  c.N = N;
  c.seed = 7;
  c.q0 = sfhp::Vector::Constant(1, 0.5);
  c.p0 = sfhp::Vector::Zero(1);
  return c;
}

sfhp::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? sfhp::Execution::serial : sfhp::Execution::parallel;
}

void BM_Ensemble(benchmark::State& state) {
  const auto config = pendulum(700);
  for (auto _ : state) {
    auto e = sfhp::run_ensemble(config, 256, mode(state));
    benchmark::DoNotOptimize(e.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_Ensemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Summary(benchmark::State& state) {
  const auto ensemble = sfhp::run_ensemble(pendulum(2000), 256, sfhp::Execution::parallel);
  for (auto _ : state) {
    auto s = sfhp::summarize(ensemble, mode(state));
    benchmark::DoNotOptimize(s.mean_q.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_Summary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConvergenceLadder(benchmark::State& state) {
  auto config = pendulum(1024);
  config.formulation = sfhp::Formulation::hp_classical;
  config.weight.reset();
  for (auto _ : state) {
    auto study = sfhp::convergence_study(config, 1.0, {1.0 / 32, 1.0 / 64, 1.0 / 128}, 1.0 / 4096,
                                         32, mode(state));
    benchmark::DoNotOptimize(study.fitted_order);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_ConvergenceLadder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
