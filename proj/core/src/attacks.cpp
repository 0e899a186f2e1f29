#include "cvqkd/attacks.hpp"

#include "cvqkd/errors.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

namespace cvqkd {

namespace {

const Eigen::Matrix2d kZ = (Eigen::Matrix2d() << 1.0, 0.0, 0.0, -1.0).finished();

}  // namespace

AttackParams::AttackParams(double transmission_, double eve_variance_)
    : transmission(transmission_), eve_variance(eve_variance_) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError(fmt::format("transmission T={} outside [0, 1]", transmission));
  }
  if (!(eve_variance >= 1.0) || !std::isfinite(eve_variance)) {
    throw DomainError(fmt::format("Eve's EPR variance W={} must be finite and >= 1", eve_variance));
  }
}

AttackParams AttackParams::from_excess_noise(double transmission, double excess) {
  return AttackParams(transmission, w_from_excess(transmission, excess));
}

void AttackParams::require_open_transmission() const {
  if (!(transmission > 0.0 && transmission < 1.0)) {
    throw DomainError(fmt::format(
        "transmission T={} must lie strictly inside (0, 1) for key-rate computations",
        transmission));
  }
}

double excess_noise(const AttackParams& params) {
  if (!(params.transmission > 0.0)) throw DomainError("excess_noise: undefined at T = 0");
  return (params.eve_variance - 1.0) * (1.0 - params.transmission) / params.transmission;
}

double w_from_excess(double transmission, double excess) {
  if (!(transmission > 0.0 && transmission < 1.0)) {
    throw DomainError(fmt::format("w_from_excess: T={} outside (0, 1)", transmission));
  }
  if (!(excess >= 0.0) || !std::isfinite(excess)) {
    throw DomainError(fmt::format("w_from_excess: excess noise N={} must be >= 0", excess));
  }
  return 1.0 + excess * transmission / (1.0 - transmission);
}

SymplecticTransform cloner_transform(const AttackParams& params) {
  return SymplecticTransform::embed(beam_splitter(params.transmission), 3, 0, 1);
}

CovarianceMatrix cloner_output(const CovarianceMatrix& signal, const AttackParams& params) {
  if (signal.n_modes() != 1) throw DomainError("cloner_output: expected a one-mode signal");
  return apply_transform(direct_sum(signal, epr_cm(params.eve_variance)),
                         cloner_transform(params));
}

CovarianceMatrix joint_ancilla_cm(const CorrelatedAttackParams& params) {
  if (!(std::abs(params.correlation) <= 1.0)) {
    throw DomainError(fmt::format("correlation c={} outside [-1, 1]", params.correlation));
  }
  const double wf = params.forward.eve_variance;
  const double wb = params.backward.eve_variance;
  // Largest cross-covariance that keeps the pair physical; c = +-1 saturates it.
  const double cross = params.correlation *
                       std::sqrt((std::min(wf, wb) - 1.0) * (std::max(wf, wb) + 1.0));
  Matrix m = Matrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = wf * Eigen::Matrix2d::Identity();
  m.bottomRightCorner(2, 2) = wb * Eigen::Matrix2d::Identity();
  m.topRightCorner(2, 2) = cross * kZ;
  m.bottomLeftCorner(2, 2) = cross * kZ;
  try {
    return CovarianceMatrix(std::move(m));
  } catch (const DomainError& e) {
    throw DomainError(fmt::format("correlation c={} is unphysical for W_f={}, W_b={}: {}",
                                  params.correlation, wf, wb, e.what()));
  }
}

TwoModeAttackChannels correlated_two_mode_channels(const CorrelatedAttackParams& params) {
  const CovarianceMatrix ancilla = joint_ancilla_cm(params);
  const double tf = params.forward.transmission;
  const double tb = params.backward.transmission;

  TwoModeAttackChannels out;
  out.forward = GaussianChannel::entangling_cloner(tf, params.forward.eve_variance);
  out.backward = GaussianChannel::entangling_cloner(tb, params.backward.eve_variance);

  // b = sqrt(tb) (sqrt(tf) x + sqrt(1-tf) e_f) + sqrt(1-tb) e_b
  const Eigen::Matrix2d sff = ancilla.matrix().topLeftCorner(2, 2);
  const Eigen::Matrix2d sbb = ancilla.matrix().bottomRightCorner(2, 2);
  const Eigen::Matrix2d sfb = ancilla.matrix().topRightCorner(2, 2);
  const double kf = std::sqrt(tb * (1.0 - tf));
  const double kb = std::sqrt(1.0 - tb);
  out.round_trip.gain = std::sqrt(tf * tb) * Eigen::Matrix2d::Identity();
  out.round_trip.noise =
      kf * kf * sff + kb * kb * sbb + kf * kb * (sfb + sfb.transpose());
  return out;
}

}  // namespace cvqkd
