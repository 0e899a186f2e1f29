#pragma once

// One-mode Gaussian (entangling-cloner) attacks and a correlated two-mode family.

#include "cvqkd/gaussian.hpp"
#include "cvqkd/gaussian_channel.hpp"

namespace cvqkd {

/// Entangling-cloner attack: beam splitter of transmission T mixing the signal with
/// one half of an EPR pair of variance W.
///
/// Construction accepts the closed range T in [0, 1] so the transforms can be probed at
/// their endpoints; rate computations call require_open_transmission().
struct AttackParams {
  double transmission = 0.5;
  double eve_variance = 1.0;

  AttackParams() = default;
  AttackParams(double transmission, double eve_variance);

  static AttackParams from_excess_noise(double transmission, double excess_noise);

  /// Throws DomainError unless 0 < T < 1.
  void require_open_transmission() const;
};

/// N = (W - 1)(1 - T) / T.
double excess_noise(const AttackParams& params);

/// W = 1 + N T / (1 - T), the inverse of excess_noise.
double w_from_excess(double transmission, double excess_noise);

/// Three-mode symplectic acting on (signal, E, E''): beam splitter on (signal, E),
/// identity on E''. Fed with signal (x) epr_cm(W) it yields (Bob, E', E'').
SymplecticTransform cloner_transform(const AttackParams& params);

/// Output state (Bob, E', E'') of the cloner for a one-mode input state.
CovarianceMatrix cloner_output(const CovarianceMatrix& signal, const AttackParams& params);

/// Two cloners, one per path of a round trip, whose injected ancilla modes share the
/// cross-covariance c * sqrt((min W - 1)(max W + 1)) Z, so |c| = 1 is the physical limit
/// (an EPR pair when W_f = W_b).
struct CorrelatedAttackParams {
  AttackParams forward;
  AttackParams backward;
  double correlation = 0.0;
};

/// Covariance of the two injected ancilla modes (E_forward, E_backward).
/// Throws DomainError when |c| > 1 or the matrix is unphysical.
CovarianceMatrix joint_ancilla_cm(const CorrelatedAttackParams& params);

struct TwoModeAttackChannels {
  GaussianChannel forward;
  GaussianChannel backward;
  /// Backward o forward with Alice's map set to the identity, including the
  /// cross-path noise term induced by the ancilla correlation.
  GaussianChannel round_trip;
};

TwoModeAttackChannels correlated_two_mode_channels(const CorrelatedAttackParams& params);

}  // namespace cvqkd
