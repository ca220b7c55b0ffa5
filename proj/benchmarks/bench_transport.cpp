#include <benchmark/benchmark.h>

#include "wk/transport.hpp"

namespace {

void BM_LoopHolonomy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int steps = static_cast<int>(state.range(1));
  wk::ManifoldSpec spec(wk::MetricField::fubini_study(n), wk::GaugeField::angular(n, 0.2));
  std::vector<wk::Complex> center(n, 0.0);
  auto curve = wk::Curve::circle(wk::ComplexPoint(center), 0.5);
  wk::TransportOptions opts;
  opts.check_convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(wk::loop_holonomy(spec, curve, steps, opts));
}
BENCHMARK(BM_LoopHolonomy)->ArgsProduct({{1, 2}, {512, 2048}})->Unit(benchmark::kMillisecond);

void BM_LineIntegral(benchmark::State& state) {
  wk::ManifoldSpec spec(wk::MetricField::flat(1), wk::GaugeField::angular(1, 0.2));
  auto curve = wk::Curve::circle(wk::ComplexPoint{0.0}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(wk::gauge_line_integral(spec, curve, 2048));
}
BENCHMARK(BM_LineIntegral)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
