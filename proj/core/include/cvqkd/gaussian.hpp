#pragma once

// Symplectic algebra for Gaussian states in shot-noise units.
//
// Quadratures are ordered (Q1, P1, ..., Qn, Pn) with [Y_l, Y_m] = 2i Omega_lm,
// so the vacuum has covariance matrix I. Entropies are reported in the unit
// selected in info_units.hpp (bits by default).

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

namespace cvqkd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Quadrature { Q, P };

/// Block-diagonal symplectic form Omega for n modes.
class SymplecticForm {
 public:
  explicit SymplecticForm(int n_modes);

  int n_modes() const noexcept { return n_modes_; }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  int n_modes_;
  Matrix matrix_;
};

SymplecticForm omega(int n_modes);

/// Symplectic eigenvalues of a covariance matrix, descending.
struct SymplecticSpectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  double product() const noexcept;
};

/// Covariance matrix of an n-mode Gaussian state.
///
/// Construction validates symmetry (1e-10, scaled by the largest entry),
/// positive definiteness and the uncertainty principle (nu_k >= 1 - 1e-9).
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);

  static CovarianceMatrix vacuum(int n_modes);
  static CovarianceMatrix thermal(double variance);

  int n_modes() const noexcept { return static_cast<int>(entries_.rows() / 2); }
  const Matrix& matrix() const noexcept { return entries_; }
  double operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

  /// Reduced state of the listed modes, in the order given.
  CovarianceMatrix reduced(std::span<const int> modes) const;

  /// Spectrum computed during validation.
  const SymplecticSpectrum& spectrum() const noexcept { return spectrum_; }

 private:
  // Trusted construction with a known spectrum, skipping validation.
  CovarianceMatrix(Matrix entries, SymplecticSpectrum spectrum)
      : entries_(std::move(entries)), spectrum_(std::move(spectrum)) {}
  friend CovarianceMatrix epr_cm(double variance);

  Matrix entries_;
  SymplecticSpectrum spectrum_;
};

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// A 2n x 2n matrix S with S^T Omega S = Omega (checked to 1e-10).
class SymplecticTransform {
 public:
  explicit SymplecticTransform(Matrix matrix);

  static SymplecticTransform identity(int n_modes);

  int n_modes() const noexcept { return static_cast<int>(matrix_.rows() / 2); }
  const Matrix& matrix() const noexcept { return matrix_; }

  /// Embeds a two-mode transform acting on modes (first, second) of an n-mode system.
  static SymplecticTransform embed(const SymplecticTransform& two_mode, int n_modes, int first,
                                   int second);

 private:
  Matrix matrix_;
};

/// First moments (Q1, P1, ...) in shot-noise units.
struct DisplacementVector {
  Vector values;

  static DisplacementVector zero(int n_modes) { return {Vector::Zero(2 * n_modes)}; }
  /// Single-mode displacement by the amplitude alpha = (q + i p) / 2.
  static DisplacementVector from_amplitude(double q, double p) { return {Eigen::Vector2d(q, p)}; }
};

/// Two-mode squeezed vacuum with variance V >= 1.
CovarianceMatrix epr_cm(double variance);

/// Symplectic eigenvalues as moduli of the eigenvalues of Omega V, with the +/- pairs
/// matched to 1e-8 (relative). Throws NumericError when the pairing fails.
SymplecticSpectrum symplectic_eigenvalues(const Matrix& cm);
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm);

/// Entropy of a thermal mode with symplectic eigenvalue nu.
double g_entropy(double nu);

double von_neumann_entropy(const CovarianceMatrix& cm);
double von_neumann_entropy(const SymplecticSpectrum& spectrum);

/// max{0, -1/2 log(2V^2 - 1 - 2V sqrt(V^2 - 1))}, evaluated without cancellation.
double log_negativity_epr(double variance);

/// Beam splitter of transmission T on (signal, ancilla):
/// x_out = sqrt(T) x_A + sqrt(1-T) x_E,  e_out = -sqrt(1-T) x_A + sqrt(T) x_E.
SymplecticTransform beam_splitter(double transmission);

CovarianceMatrix apply_transform(const CovarianceMatrix& cm, const SymplecticTransform& s);

/// Conditional state of the remaining modes after homodyning one quadrature of `mode_index`.
CovarianceMatrix condition_on_homodyne(const CovarianceMatrix& cm, int mode_index,
                                       Quadrature quadrature);

/// Conditional state of the remaining modes after heterodyning `mode_index`.
CovarianceMatrix condition_on_heterodyne(const CovarianceMatrix& cm, int mode_index);

/// Gaussian conditioning of a joint covariance (quantum quadratures and classical
/// variables alike) on the variables `given`: Sigma_kk - Sigma_kg Sigma_gg^-1 Sigma_gk.
/// `given` must index commuting variables; the caller is responsible for that.
Matrix condition_on_variables(const Matrix& joint, std::span<const int> keep,
                              std::span<const int> given);

/// Rows/cols `indices` of a square matrix.
Matrix principal_block(const Matrix& m, std::span<const int> indices);

}  // namespace cvqkd
