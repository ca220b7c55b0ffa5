#include <benchmark/benchmark.h>

#include "wk/classify.hpp"
#include "wk/connection.hpp"
#include "wk/sampling.hpp"

namespace {

wk::ManifoldSpec weyl_fs(int n) {
  return {wk::MetricField::fubini_study(n), wk::GaugeField::angular(n, 0.3, 0, {1.5, 0.0})};
}

void BM_Metric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto spec = weyl_fs(n);
  auto p = wk::polydisc_samples(n, 1, 0).front();
  for (auto _ : state) benchmark::DoNotOptimize(wk::evaluate_metric(spec, p));
}
BENCHMARK(BM_Metric)->DenseRange(1, 3);

void BM_WeylChristoffel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto spec = weyl_fs(n);
  auto p = wk::polydisc_samples(n, 1, 0).front();
  for (auto _ : state) benchmark::DoNotOptimize(wk::weyl_christoffel(spec, p));
}
BENCHMARK(BM_WeylChristoffel)->DenseRange(1, 3);

void BM_Curvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto spec = weyl_fs(n);
  auto p = wk::polydisc_samples(n, 1, 0).front();
  for (auto _ : state) benchmark::DoNotOptimize(wk::curvature(spec, p));
}
BENCHMARK(BM_Curvature)->DenseRange(1, 2);

void BM_Classify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto spec = weyl_fs(n);
  auto samples = wk::polydisc_samples(n, 16, 0);
  for (auto _ : state) benchmark::DoNotOptimize(wk::classify(spec, samples, 1e-8));
}
BENCHMARK(BM_Classify)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
