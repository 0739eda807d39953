#include <benchmark/benchmark.h>

#include <numbers>

#include "hdiff/geometry.hpp"
#include "hdiff/grid.hpp"
#include "hdiff/poisson.hpp"

namespace {

void BM_EvalNearCorner(benchmark::State& state) {
  const hdiff::ExtremalSpec spec{hdiff::DiskSelfMap::monomial(2)};
  const double gap = std::pow(10.0, -static_cast<double>(state.range(0)));
  const hdiff::Complex z = std::polar(1.0 - gap, std::numbers::pi / 4 + 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(hdiff::eval_normalized(spec, z));
}
BENCHMARK(BM_EvalNearCorner)->DenseRange(1, 6);

void BM_FourierAnalyze(benchmark::State& state) {
  const auto b = hdiff::BoundaryFunction::twist(0.3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hdiff::fourier_analyze(b.samples()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierAnalyze)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

void BM_MarginScan(benchmark::State& state) {
  const hdiff::ExtremalSpec spec{hdiff::DiskSelfMap::blaschke(0.3, 0.7)};
  const auto grid = hdiff::polar_grid();
  for (auto _ : state) benchmark::DoNotOptimize(hdiff::margin_scan(spec, grid));
}
BENCHMARK(BM_MarginScan);

void BM_SeriesScan(benchmark::State& state) {
  const auto series = hdiff::poisson_extend(hdiff::BoundaryFunction::twist(0.3, static_cast<std::size_t>(state.range(0))));
  const auto grid = hdiff::polar_grid();
  for (auto _ : state) benchmark::DoNotOptimize(hdiff::sp_scan(series, 1.0, grid));
}
BENCHMARK(BM_SeriesScan)->Arg(256)->Arg(4096);

void BM_PolygonTrace(benchmark::State& state) {
  const hdiff::ExtremalSpec spec{hdiff::DiskSelfMap::monomial(2)};
  for (auto _ : state)
    benchmark::DoNotOptimize(hdiff::trace(spec, 1.0 - 1e-4, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PolygonTrace)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
