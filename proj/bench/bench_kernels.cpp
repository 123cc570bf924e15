// Serial reference vs OpenMP kernel timings. Run with OMP_NUM_THREADS set.
#include <benchmark/benchmark.h>

#include "infoflow/exact.hpp"
#include "infoflow/fit.hpp"
#include "infoflow/walk.hpp"

using namespace infoflow;

namespace {

ModelParams shape_params() {
  ModelParams p;
  p.e0 = 15;
  p.t_max = 200;
  p.p_l0 = 0.5;
  p.p_d0 = 0.1;
  p.p_r0 = 0.1;
  p.phi = ResponseCurve::saturating(15.0);
  return p;
}

void BM_AgentsSerial(benchmark::State& state) {
  const ModelParams p = shape_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::simulate_agents(p, 1, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AgentsParallel(benchmark::State& state) {
  const ModelParams p = shape_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_agents(p, 1, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LikePmfSerial(benchmark::State& state) {
  ModelParams p = shape_params();
  p.t_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(serial::like_count_pmf_dp(p));
}

void BM_LikePmfParallel(benchmark::State& state) {
  ModelParams p = shape_params();
  p.t_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(like_count_pmf_dp(p));
}

Histogram sample_histogram() {
  return histogram_from_samples(sample_weibull({2.1, 7.4}, 3, 100000), 1.0);
}

void BM_GridSerial(benchmark::State& state) {
  const Histogram h = sample_histogram();
  const FitGrid g = least_squares_grid(h, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::grid_search(h, g));
}

void BM_GridParallel(benchmark::State& state) {
  const Histogram h = sample_histogram();
  const FitGrid g = least_squares_grid(h, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_search(h, g));
}

}  // namespace

BENCHMARK(BM_AgentsSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AgentsParallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LikePmfSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LikePmfParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Arg(48)->Arg(192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(48)->Arg(192)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
