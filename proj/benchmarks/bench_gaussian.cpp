#include "cvqkd/attacks.hpp"
#include "cvqkd/gaussian.hpp"
#include "cvqkd/key_rates.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cvqkd;

void BM_SymplecticEigenvalues(benchmark::State& state) {
  const CovarianceMatrix cm = exact_cm(Scheme::TwoWay, Party::Eve, Conditioning::None,
                                       AttackParams(0.7, 2.0), Modulation::identical(1e3));
  for (auto _ : state) benchmark::DoNotOptimize(symplectic_eigenvalues(cm.matrix()));
}
BENCHMARK(BM_SymplecticEigenvalues);

void BM_VonNeumannEntropy(benchmark::State& state) {
  const CovarianceMatrix cm = exact_cm(Scheme::OneWay, Party::BobEve, Conditioning::None,
                                       AttackParams(0.7, 2.0), Modulation::identical(1e3));
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(cm));
}
BENCHMARK(BM_VonNeumannEntropy);

}  // namespace
