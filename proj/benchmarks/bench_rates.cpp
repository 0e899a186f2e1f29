#include "cvqkd/key_rates.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cvqkd;

void BM_AsymptoticRate(benchmark::State& state) {
  const auto p = static_cast<Protocol>(state.range(0));
  const AttackParams a(0.7, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(asymptotic_rate(p, Reconciliation::DR, a));
  state.SetLabel(std::string(to_string(p)));
}
BENCHMARK(BM_AsymptoticRate)->DenseRange(0, 7);

void BM_Het2RrRate(benchmark::State& state) {
  const AttackParams a(0.7, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(rate_rr_het2(a));
}
BENCHMARK(BM_Het2RrRate);

void BM_ExactRate(benchmark::State& state) {
  const auto p = static_cast<Protocol>(state.range(0));
  const AttackParams a(0.7, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(exact_rate(p, Reconciliation::DR, 1e4, a));
  state.SetLabel(std::string(to_string(p)));
}
BENCHMARK(BM_ExactRate)->Arg(static_cast<int>(Protocol::Hom))->Arg(static_cast<int>(Protocol::Het2));

}  // namespace
