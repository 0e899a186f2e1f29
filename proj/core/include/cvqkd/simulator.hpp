#pragma once

// Monte-Carlo simulation of the individual protocols as classical phase-space
// trajectories: every vacuum, EPR pair and modulation is sampled from its Wigner
// function and pushed through the beam splitters and Bob's decoding by hand.

#include "cvqkd/attacks.hpp"
#include "cvqkd/protocol.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cvqkd {

struct SimConfig {
  /// Hom, Het, Hom2 or Het2.
  Protocol protocol = Protocol::Hom;
  /// One-way: signal variance V. Two-way: Bob's EPR variance V (Alice modulates V - 1).
  double modulation = 1e3;
  /// T may be 0 or 1 here.
  AttackParams params;
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 0;
  /// Worker threads (0 = default_thread_count()); never changes the result.
  unsigned threads = 0;
};

struct MiEstimate {
  /// Active information unit.
  double value = 0.0;
  /// Delta-method standard error, floored at 1/n (nats) per dimension.
  double sigma = 0.0;
  /// X_B is a deterministic function of X_A in some dimension; `value` holds the cap.
  bool capped = false;
};

struct SimRun {
  SimConfig config;
  /// 1 (Hom, Hom2) or 2 (Het, Het2).
  int dimensions = 1;
  /// Row-major samples, n_samples x dimensions.
  std::vector<double> x_a;
  std::vector<double> x_b;

  std::vector<double> variance;              // empirical V(X_B) per dimension
  std::vector<double> conditional_variance;  // empirical V(X_B | X_A), regression residual
  std::vector<double> analytic_variance;
  std::vector<double> analytic_conditional_variance;
  MiEstimate empirical_mi;
  double analytic_mi = 0.0;
};

/// Throws DomainError for collective protocols, V <= 1 or n < 1000, and NumericError
/// when a sample variance vanishes.
SimRun simulate(const SimConfig& config);

/// Gaussian mutual information from paired samples, summed over dimensions: each X_B
/// column is regressed on the matching X_A column and contributes
/// 1/2 log(V(X_B) / V(X_B | X_A)).
MiEstimate empirical_mi(std::span<const double> x_a, std::span<const double> x_b,
                        int dimensions);

}  // namespace cvqkd
