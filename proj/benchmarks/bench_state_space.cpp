#include <numbers>

#include <benchmark/benchmark.h>

#include "wk/state_space.hpp"

namespace {

void BM_BerryPhase(benchmark::State& state) {
  auto path = wk::BlochPath::colatitude_circle(std::numbers::pi / 3);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wk::berry_phase_two_level(path, steps));
}
BENCHMARK(BM_BerryPhase)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_HistoryProjector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(4, 4);
  e(0, 0) = e(1, 1) = 1.0;
  std::vector<Eigen::MatrixXcd> factors(n, e);
  std::vector<double> times;
  for (int k = 0; k < n; ++k) times.push_back(k);
  wk::HistoryProjector y(factors, times);
  for (auto _ : state) benchmark::DoNotOptimize(y.matrix());
}
BENCHMARK(BM_HistoryProjector)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
