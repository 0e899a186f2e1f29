#include "cvqkd/tomography.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/rng.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace cvqkd {

namespace {

constexpr std::uint64_t kMinSamples = 1000;

// Design matrix rows (q_in, p_in, 1).
Eigen::MatrixX3d design(const TomographyDataset& data) {
  Eigen::MatrixX3d x(static_cast<Eigen::Index>(data.probes.size()), 3);
  for (std::size_t i = 0; i < data.probes.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = data.probes[i].input_mean.x();
    x(r, 1) = data.probes[i].input_mean.y();
    x(r, 2) = 1.0;
  }
  return x;
}

void validate(const TomographyDataset& data) {
  if (data.probes.size() < 3) throw DomainError("tomography: need at least 3 probes");
  for (const auto& p : data.probes) {
    if (p.samples < kMinSamples) {
      throw DomainError(fmt::format("tomography: probe with {} samples; need >= {}", p.samples,
                                    kMinSamples));
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixX3d> qr(design(data));
  qr.setThreshold(1e-9);
  if (qr.rank() < 3) {
    throw DomainError("tomography: probe displacements are not affinely independent");
  }
}

double gain_noise_deviation(const GaussianChannel& a, const GaussianChannel& b) {
  const ChannelDeviation d = deviation(a, b);
  return std::max(d.gain, d.noise);
}

}  // namespace

double estimation_sigma(const TomographyDataset& data) {
  validate(data);
  double max_var = 0.0;
  double n_min = static_cast<double>(data.probes.front().samples);
  for (const auto& p : data.probes) {
    max_var = std::max({max_var, p.output_cm(0, 0), p.output_cm(1, 1)});
    n_min = std::min(n_min, static_cast<double>(p.samples));
  }
  const Eigen::MatrixX3d x = design(data);
  const Eigen::Matrix3d inv = (x.transpose() * x).inverse();
  const double sigma_mean = std::sqrt(max_var / n_min);
  const double sigma_gain = sigma_mean * std::sqrt(std::max(inv(0, 0), inv(1, 1)));
  const double sigma_offset = sigma_mean * std::sqrt(inv(2, 2));
  const auto k = static_cast<double>(data.probes.size());
  const double sigma_noise = max_var * std::sqrt(2.0 / (n_min * k)) + 2.0 * sigma_gain;
  return std::max({sigma_gain, sigma_offset, sigma_noise});
}

GaussianChannel estimate_channel(const TomographyDataset& data) {
  validate(data);
  const Eigen::MatrixX3d x = design(data);
  Eigen::MatrixX2d y(x.rows(), 2);
  for (std::size_t i = 0; i < data.probes.size(); ++i) {
    y.row(static_cast<Eigen::Index>(i)) = data.probes[i].output_mean.transpose();
  }
  const Eigen::Matrix<double, 3, 2> beta = x.colPivHouseholderQr().solve(y);

  GaussianChannel ch;
  ch.gain = beta.topRows<2>().transpose();
  ch.displacement_offset = beta.row(2).transpose();
  ch.noise.setZero();
  for (const auto& p : data.probes) {
    ch.noise += p.output_cm - ch.gain * p.input_cm * ch.gain.transpose();
  }
  ch.noise /= static_cast<double>(data.probes.size());
  ch.noise = 0.5 * (ch.noise + ch.noise.transpose()).eval();

  const double sigma = estimation_sigma(data);
  if (ch.cp_margin() < -5.0 * sigma) {
    throw NumericError(fmt::format(
        "tomography: estimated channel violates complete positivity (margin {:.6g}, sigma {:.3g})",
        ch.cp_margin(), sigma));
  }
  return ch;
}

GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& middle,
                        const GaussianChannel& last) {
  GaussianChannel out;
  const Eigen::Matrix2d g32 = last.gain * middle.gain;
  out.gain = g32 * first.gain;
  out.noise = g32 * first.noise * g32.transpose() + last.gain * middle.noise * last.gain.transpose() +
              last.noise;
  out.displacement_offset = g32 * first.displacement_offset +
                            last.gain * middle.displacement_offset + last.displacement_offset;
  return out;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Reducible: return "reducible";
    case Verdict::Irreducible: return "irreducible";
    case Verdict::Asymmetric: return "asymmetric";
  }
  return "unknown";
}

ReducibilityReport check_reducibility(const GaussianChannel& forward, const GaussianChannel& backward,
                                      const GaussianChannel& round_trip, double tolerance,
                                      const GaussianChannel& alice) {
  if (!(tolerance > 0.0)) throw DomainError("check_reducibility: tolerance must be positive");
  ReducibilityReport r;
  r.tolerance = tolerance;
  r.symmetry_deviation = gain_noise_deviation(forward, backward);
  r.composition_deviation = gain_noise_deviation(round_trip, compose(forward, alice, backward));
  if (r.symmetry_deviation > tolerance) {
    r.verdict = Verdict::Asymmetric;
  } else if (r.composition_deviation > tolerance) {
    r.verdict = Verdict::Irreducible;
  } else {
    r.verdict = Verdict::Reducible;
  }
  return r;
}

double statistical_tolerance(const TomographyDataset& forward, const TomographyDataset& backward,
                             const TomographyDataset& round_trip) {
  return 5.0 * (estimation_sigma(forward) + estimation_sigma(backward) +
                estimation_sigma(round_trip));
}

std::vector<Eigen::Vector2d> default_probe_displacements() {
  return {{3.0, 0.0}, {0.0, 3.0}, {-3.0, 0.0}, {0.0, -3.0},
          {3.5, 3.5}, {-3.5, 3.5}, {-3.5, -3.5}, {3.5, -3.5}};
}

TomographyDataset synthesize_dataset(const GaussianChannel& channel,
                                     std::span<const Eigen::Vector2d> displacements,
                                     std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw DomainError("synthesize_dataset: need at least 2 samples per probe");
  const Eigen::Matrix2d out_cm = channel.apply_cm(Eigen::Matrix2d::Identity());
  Eigen::LLT<Eigen::Matrix2d> llt(out_cm);
  if (llt.info() != Eigen::Success) {
    throw DomainError("synthesize_dataset: channel output covariance is not positive definite");
  }
  const Eigen::Matrix2d chol = llt.matrixL();

  TomographyDataset data;
  for (std::size_t k = 0; k < displacements.size(); ++k) {
    SplitMix64 gen = sample_stream(seed, k);
    std::normal_distribution<double> normal;
    const Eigen::Vector2d mean = channel.apply_mean(displacements[k]);
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    std::vector<Eigen::Vector2d> draws(samples);
    for (auto& d : draws) {
      const Eigen::Vector2d z(normal(gen), normal(gen));
      d = mean + chol * z;
      sum += d;
    }
    ProbeRecord rec;
    rec.input_mean = displacements[k];
    rec.samples = samples;
    rec.output_mean = sum / static_cast<double>(samples);
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto& d : draws) {
      const Eigen::Vector2d c = d - rec.output_mean;
      cov += c * c.transpose();
    }
    rec.output_cm = cov / static_cast<double>(samples - 1);
    data.probes.push_back(rec);
  }
  return data;
}

}  // namespace cvqkd
