#pragma once

#include <Eigen/Dense>

namespace cvqkd {

/// One-mode Gaussian channel acting on first and second moments:
///   mean -> gain * mean + displacement_offset,   V -> gain * V * gain^T + noise.
struct GaussianChannel {
  Eigen::Matrix2d gain = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d noise = Eigen::Matrix2d::Zero();
  Eigen::Vector2d displacement_offset = Eigen::Vector2d::Zero();

  static GaussianChannel identity() { return {}; }
  /// Alice's encoding map D(alpha): unit gain, no noise, offset (q, p).
  static GaussianChannel displacement(const Eigen::Vector2d& offset);
  /// Moment map of an entangling cloner with transmission T and ancilla variance W.
  static GaussianChannel entangling_cloner(double transmission, double eve_variance);

  Eigen::Vector2d apply_mean(const Eigen::Vector2d& mean) const {
    return gain * mean + displacement_offset;
  }
  Eigen::Matrix2d apply_cm(const Eigen::Matrix2d& cm) const {
    return gain * cm * gain.transpose() + noise;
  }

  /// Smallest eigenvalue of the Hermitian form noise + i(Omega - gain Omega gain^T);
  /// complete positivity requires it to be >= 0.
  double cp_margin() const;
  bool is_completely_positive(double tolerance = 1e-9) const { return cp_margin() >= -tolerance; }
};

/// Max-abs elementwise differences between two channels.
struct ChannelDeviation {
  double gain = 0.0;
  double noise = 0.0;
  double offset = 0.0;

  double max() const noexcept;
};

ChannelDeviation deviation(const GaussianChannel& a, const GaussianChannel& b);

}  // namespace cvqkd
