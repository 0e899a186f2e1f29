#include "cvqkd/gaussian_channel.hpp"

#include "cvqkd/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cvqkd {

namespace {

Eigen::Matrix2d omega2() {
  Eigen::Matrix2d om;
  om << 0.0, 1.0, -1.0, 0.0;
  return om;
}

}  // namespace

GaussianChannel GaussianChannel::displacement(const Eigen::Vector2d& offset) {
  GaussianChannel ch;
  ch.displacement_offset = offset;
  return ch;
}

GaussianChannel GaussianChannel::entangling_cloner(double transmission, double eve_variance) {
  const AttackParams params(transmission, eve_variance);
  GaussianChannel ch;
  ch.gain = std::sqrt(params.transmission) * Eigen::Matrix2d::Identity();
  ch.noise = (1.0 - params.transmission) * params.eve_variance * Eigen::Matrix2d::Identity();
  return ch;
}

double GaussianChannel::cp_margin() const {
  const Eigen::Matrix2d om = omega2();
  const Eigen::Matrix2d skew = om - gain * om * gain.transpose();
  Eigen::Matrix2cd form = noise.cast<std::complex<double>>();
  form += std::complex<double>(0.0, 1.0) * skew.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(form, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double ChannelDeviation::max() const noexcept { return std::max({gain, noise, offset}); }

ChannelDeviation deviation(const GaussianChannel& a, const GaussianChannel& b) {
  return {(a.gain - b.gain).cwiseAbs().maxCoeff(), (a.noise - b.noise).cwiseAbs().maxCoeff(),
          (a.displacement_offset - b.displacement_offset).cwiseAbs().maxCoeff()};
}

}  // namespace cvqkd
