#pragma once

// Moment-level tomography of one-mode Gaussian channels and the reducibility test for a
// round trip: the two-way channel must factor as E2 o E_alpha o E1 with E1 = E2.

#include "cvqkd/gaussian_channel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cvqkd {

/// One probe state sent through the channel and the moments measured at its output.
struct ProbeRecord {
  Eigen::Vector2d input_mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d input_cm = Eigen::Matrix2d::Identity();
  Eigen::Vector2d output_mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d output_cm = Eigen::Matrix2d::Identity();
  std::uint64_t samples = 0;
};

struct TomographyDataset {
  std::vector<ProbeRecord> probes;
};

/// Least-squares fit of gain and offset from input to output means; noise is the
/// probe-averaged output CM minus gain * input CM * gain^T.
/// Throws DomainError for fewer than 3 affinely independent probes or fewer than 1000
/// samples per probe, NumericError when the estimate violates complete positivity by
/// more than 5 sigma.
GaussianChannel estimate_channel(const TomographyDataset& data);

/// One-sigma sampling error of estimate_channel() on this dataset (max over gain, noise
/// and offset entries).
double estimation_sigma(const TomographyDataset& data);

/// last o middle o first.
GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& middle,
                        const GaussianChannel& last);

enum class Verdict { Reducible, Irreducible, Asymmetric };

std::string_view to_string(Verdict v) noexcept;

struct ReducibilityReport {
  Verdict verdict = Verdict::Reducible;
  /// Max-abs difference of gain and noise between E1 and E2.
  double symmetry_deviation = 0.0;
  /// Max-abs difference of gain and noise between the round trip and E2 o E_alpha o E1.
  double composition_deviation = 0.0;
  double tolerance = 0.0;
};

/// Asymmetric if E1 and E2 differ by more than tol, else Irreducible if the round trip
/// differs from the composition by more than tol, else Reducible. `alice` is Alice's
/// map E_alpha (identity when she does not encode). Throws DomainError for tol <= 0.
ReducibilityReport check_reducibility(const GaussianChannel& forward, const GaussianChannel& backward,
                                      const GaussianChannel& round_trip, double tolerance,
                                      const GaussianChannel& alice = GaussianChannel::identity());

/// 5 (sigma_forward + sigma_backward + sigma_round_trip).
double statistical_tolerance(const TomographyDataset& forward, const TomographyDataset& backward,
                             const TomographyDataset& round_trip);

/// Eight coherent probes with displacements of magnitude 3 to 5 around the origin.
std::vector<Eigen::Vector2d> default_probe_displacements();

/// Sample moments of `samples` Gaussian outputs per coherent probe (input CM = I).
TomographyDataset synthesize_dataset(const GaussianChannel& channel,
                                     std::span<const Eigen::Vector2d> displacements,
                                     std::uint64_t samples, std::uint64_t seed);

}  // namespace cvqkd
