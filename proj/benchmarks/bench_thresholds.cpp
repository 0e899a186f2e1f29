#include "cvqkd/thresholds.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cvqkd;

void BM_SolveThreshold(benchmark::State& state) {
  const auto p = static_cast<Protocol>(state.range(0));
  const auto r = static_cast<Reconciliation>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_threshold(p, r, 0.7));
  state.SetLabel(std::string(to_string(p)) + " " + std::string(to_string(r)));
}
BENCHMARK(BM_SolveThreshold)
    ->Args({static_cast<int>(Protocol::Hom), static_cast<int>(Reconciliation::DR)})
    ->Args({static_cast<int>(Protocol::Hom2), static_cast<int>(Reconciliation::DR)})
    ->Args({static_cast<int>(Protocol::Het2), static_cast<int>(Reconciliation::RR)});

void BM_SweepCurve(benchmark::State& state) {
  ThresholdOptions o;
  o.threads = static_cast<unsigned>(state.range(0));
  const TGrid grid{0.02, 0.98, 97};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_curve(Protocol::Het2, Reconciliation::RR, grid, o));
}
BENCHMARK(BM_SweepCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
