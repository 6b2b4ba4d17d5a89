// Serial reference vs OpenMP kernels: one Psi pass over a sweepout, and a
// short tightening run.

#include "sweepwidth/sweepout.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace sweepwidth;

namespace {

const Sweepout& sphere_sweepout() {
  static const Sweepout s = [] {
    auto surface = std::make_shared<const Surface>(normalize_scaling(Surface::sphere(1.0)).surface);
    return pl_replace(initial_sweepout(surface, 32, 24));
  }();
  return s;
}

void BM_PsiAllSerial(benchmark::State& state) {
  const auto& s = sphere_sweepout();
  for (auto _ : state) benchmark::DoNotOptimize(psi_all_serial(s.slices));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}

void BM_PsiAllParallel(benchmark::State& state) {
  const auto& s = sphere_sweepout();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi_all_parallel(s.slices));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}

void BM_Tighten(benchmark::State& state) {
  const auto& s = sphere_sweepout();
  TightenConfig cfg;
  cfg.max_iterations = 5;
  cfg.min_iterations = 0;
  cfg.track_distance = false;
  cfg.parallel = state.range(0) > 0;
  if (cfg.parallel) omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tighten(s, cfg));
}

}  // namespace

BENCHMARK(BM_PsiAllSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsiAllParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Tighten)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
