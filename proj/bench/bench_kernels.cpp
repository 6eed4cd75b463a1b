// Serial reference vs OpenMP/vectorized kernels.
#include <benchmark/benchmark.h>

#include "slt/ensemble.hpp"
#include "slt/functional.hpp"
#include "slt/kernel.hpp"
#include "slt/path.hpp"

namespace {

void BM_ChainLevels(benchmark::State& state, slt::KernelImpl impl) {
  const int n = static_cast<int>(state.range(0));
  const slt::PlanarPath path = slt::sample_path(n, 42);
  const Eigen::MatrixXd rho = Eigen::MatrixXd::Ones(n, 1);
  slt::KernelOptions options;
  options.impl = impl;
  for (auto _ : state) benchmark::DoNotOptimize(slt::simplex_levels(path, rho, 0.05, 2, options));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * (n - 1) / 2);
}

void BM_Ensemble(benchmark::State& state, slt::Execution execution, slt::KernelImpl impl) {
  slt::EnsembleConfig config;
  config.n_paths = state.range(0);
  config.n_steps = static_cast<int>(state.range(1));
  config.seed = 7;
  config.execution = execution;
  config.kernel.impl = impl;
  const slt::ScalarWeight one = slt::ScalarWeight::constant(1.0);
  const double eps[] = {0.1, 0.05, 0.02};
  for (auto _ : state) benchmark::DoNotOptimize(slt::sample_functionals(config, std::span(&one, 1), eps, 2));
  state.SetItemsProcessed(state.iterations() * config.n_paths);
}

}  // namespace

BENCHMARK_CAPTURE(BM_ChainLevels, reference, slt::KernelImpl::kReference)->Arg(512)->Arg(2048)->Arg(4096);
BENCHMARK_CAPTURE(BM_ChainLevels, vectorized, slt::KernelImpl::kVectorized)->Arg(512)->Arg(2048)->Arg(4096);

BENCHMARK_CAPTURE(BM_Ensemble, serial_reference, slt::Execution::kSerial, slt::KernelImpl::kReference)
    ->Args({16, 1024})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Ensemble, serial_vectorized, slt::Execution::kSerial, slt::KernelImpl::kVectorized)
    ->Args({16, 1024})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Ensemble, parallel_vectorized, slt::Execution::kParallel, slt::KernelImpl::kVectorized)
    ->Args({16, 1024})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
