#include "cvqkd/simulator.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cvqkd;

void BM_Simulate(benchmark::State& state) {
  SimConfig c;
  c.protocol = static_cast<Protocol>(state.range(0));
  c.params = AttackParams(0.7, 1.3);
  c.n_samples = 100000;
  c.seed = 1;
  c.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.n_samples));
}
BENCHMARK(BM_Simulate)
    ->Args({static_cast<int>(Protocol::Hom), 1})
    ->Args({static_cast<int>(Protocol::Het2), 1})
    ->Args({static_cast<int>(Protocol::Het2), 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
