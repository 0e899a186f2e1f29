#include "cvqkd/gaussian.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/info_units.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>

namespace cvqkd {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kPhysicalTolerance = 1e-9;
constexpr double kPairingTolerance = 1e-8;
constexpr double kSymplecticTolerance = 1e-10;
constexpr double kEntropyGuard = 1e-12;

void require_square_even(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw DomainError(fmt::format("{}: expected a non-empty 2n x 2n matrix, got {} x {}", what,
                                  m.rows(), m.cols()));
  }
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_symmetric(const Matrix& m, const char* what) {
  const double scale = std::max(1.0, max_abs(m));
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw DomainError(fmt::format("{}: matrix is not symmetric (max |V - V^T| = {:.3e})", what,
                                  asym));
  }
}

std::vector<int> complement_indices(int dim, std::span<const int> removed) {
  std::vector<int> kept;
  for (int i = 0; i < dim; ++i) {
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) kept.push_back(i);
  }
  return kept;
}

}  // namespace

SymplecticForm::SymplecticForm(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw DomainError("omega: n_modes must be >= 1");
  matrix_ = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    matrix_(2 * k, 2 * k + 1) = 1.0;
    matrix_(2 * k + 1, 2 * k) = -1.0;
  }
}

SymplecticForm omega(int n_modes) { return SymplecticForm(n_modes); }

double SymplecticSpectrum::product() const noexcept {
  return std::accumulate(values.begin(), values.end(), 1.0, std::multiplies<>());
}

SymplecticSpectrum symplectic_eigenvalues(const Matrix& cm) {
  require_square_even(cm, "symplectic_eigenvalues");
  require_symmetric(cm, "symplectic_eigenvalues");
  const auto n = cm.rows() / 2;

  // The eigenvalues of i Omega V are the real pairs +nu_k, -nu_k. Without rescaling, the
  // complex QR iteration keeps ~1e-9 relative accuracy on the small nu_k of states whose
  // variances reach 1e8.
  const Eigen::MatrixXcd a =
      std::complex<double>(0.0, 1.0) * (omega(static_cast<int>(n)).matrix() * cm).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symplectic_eigenvalues: eigensolver did not converge");
  }
  std::vector<double> upper;
  std::vector<double> lower;
  for (const auto& lambda : solver.eigenvalues()) {
    (lambda.real() >= 0.0 ? upper : lower).push_back(std::abs(lambda));
  }
  if (upper.size() != lower.size()) {
    throw NumericError("symplectic_eigenvalues: eigenvalues of Omega V are not +/- paired");
  }
  std::sort(upper.begin(), upper.end(), std::greater<>());
  std::sort(lower.begin(), lower.end(), std::greater<>());
  SymplecticSpectrum out;
  out.values.reserve(upper.size());
  for (std::size_t k = 0; k < upper.size(); ++k) {
    const double mismatch = std::abs(upper[k] - lower[k]);
    if (mismatch > kPairingTolerance * std::max(1.0, upper[k])) {
      throw NumericError(fmt::format(
          "symplectic_eigenvalues: +/- pairing failed ({} vs {}); covariance matrix is broken",
          upper[k], lower[k]));
    }
    out.values.push_back(0.5 * (upper[k] + lower[k]));
  }
  return out;
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm) { return cm.spectrum(); }

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square_even(entries_, "CovarianceMatrix");
  require_symmetric(entries_, "CovarianceMatrix");
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
  Eigen::LDLT<Matrix> ldlt(entries_);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      (ldlt.vectorD().array() <= 0.0).any()) {
    throw DomainError("CovarianceMatrix: matrix is not positive definite");
  }
  spectrum_ = symplectic_eigenvalues(entries_);
  const double smallest = spectrum_.values.back();
  if (smallest < 1.0 - kPhysicalTolerance) {
    throw DomainError(fmt::format(
        "CovarianceMatrix: violates the uncertainty principle (smallest symplectic eigenvalue "
        "{:.12g})",
        smallest));
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw DomainError("vacuum: n_modes must be >= 1");
  return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix CovarianceMatrix::thermal(double variance) {
  if (!(variance >= 1.0)) throw DomainError("thermal: variance must be >= 1");
  return CovarianceMatrix(variance * Matrix::Identity(2, 2));
}

CovarianceMatrix CovarianceMatrix::reduced(std::span<const int> modes) const {
  std::vector<int> idx;
  for (int m : modes) {
    if (m < 0 || m >= n_modes()) throw DomainError("reduced: mode index out of range");
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return CovarianceMatrix(principal_block(entries_, idx));
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  const auto na = a.matrix().rows();
  const auto nb = b.matrix().rows();
  Matrix m = Matrix::Zero(na + nb, na + nb);
  m.topLeftCorner(na, na) = a.matrix();
  m.bottomRightCorner(nb, nb) = b.matrix();
  return CovarianceMatrix(std::move(m));
}

SymplecticTransform::SymplecticTransform(Matrix matrix) : matrix_(std::move(matrix)) {
  require_square_even(matrix_, "SymplecticTransform");
  const Matrix om = omega(n_modes()).matrix();
  const double defect = (matrix_.transpose() * om * matrix_ - om).cwiseAbs().maxCoeff();
  if (defect > kSymplecticTolerance) {
    throw DomainError(
        fmt::format("SymplecticTransform: S^T Omega S != Omega (defect {:.3e})", defect));
  }
}

SymplecticTransform SymplecticTransform::identity(int n_modes) {
  return SymplecticTransform(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticTransform SymplecticTransform::embed(const SymplecticTransform& two_mode, int n_modes,
                                               int first, int second) {
  if (two_mode.n_modes() != 2) throw DomainError("embed: expected a two-mode transform");
  if (first == second || first < 0 || second < 0 || first >= n_modes || second >= n_modes) {
    throw DomainError("embed: invalid mode indices");
  }
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const int base[2] = {2 * first, 2 * second};
  for (int bi = 0; bi < 2; ++bi) {
    for (int bj = 0; bj < 2; ++bj) {
      s.block(base[bi], base[bj], 2, 2) = two_mode.matrix().block(2 * bi, 2 * bj, 2, 2);
    }
  }
  return SymplecticTransform(std::move(s));
}

CovarianceMatrix epr_cm(double variance) {
  if (!(variance >= 1.0)) {
    throw DomainError(fmt::format("epr_cm: variance must be >= 1, got {}", variance));
  }
  const double c = std::sqrt(variance * variance - 1.0);
  Matrix m = variance * Matrix::Identity(4, 4);
  m(0, 2) = m(2, 0) = c;
  m(1, 3) = m(3, 1) = -c;
  // Pure by construction. Recomputing the spectrum would lose it: rounding c by eps*V
  // moves V^2 - c^2 by ~eps*V^2.
  return CovarianceMatrix(std::move(m), SymplecticSpectrum{{1.0, 1.0}});
}

double g_entropy(double nu) {
  if (!(nu >= 1.0 - kPhysicalTolerance)) {
    throw DomainError(fmt::format("g_entropy: symplectic eigenvalue {} < 1", nu));
  }
  if (nu <= 1.0 + kEntropyGuard) return 0.0;
  // (a ln a - b ln b) with a = b + 1 rewritten as ln a + b ln(1 + 1/b).
  const double b = 0.5 * (nu - 1.0);
  const double nats = std::log(b + 1.0) + b * std::log1p(1.0 / b);
  return from_bits(nats / std::numbers::ln2);
}

double von_neumann_entropy(const SymplecticSpectrum& spectrum) {
  double s = 0.0;
  for (double nu : spectrum.values) s += g_entropy(nu);
  return s;
}

double von_neumann_entropy(const CovarianceMatrix& cm) {
  return von_neumann_entropy(cm.spectrum());
}

double log_negativity_epr(double variance) {
  if (!(variance >= 1.0)) throw DomainError("log_negativity_epr: variance must be >= 1");
  // 2V^2 - 1 - 2V sqrt(V^2-1) = (V - sqrt(V^2-1))^2 = (V + sqrt(V^2-1))^-2
  const double e = info_log(variance + std::sqrt(variance * variance - 1.0));
  return std::max(0.0, e);
}

SymplecticTransform beam_splitter(double transmission) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError(fmt::format("beam_splitter: transmission {} outside [0, 1]", transmission));
  }
  const double t = std::sqrt(transmission);
  const double r = std::sqrt(1.0 - transmission);
  Matrix s = Matrix::Zero(4, 4);
  s.block<2, 2>(0, 0) = t * Eigen::Matrix2d::Identity();
  s.block<2, 2>(0, 2) = r * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2, 0) = -r * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2, 2) = t * Eigen::Matrix2d::Identity();
  return SymplecticTransform(std::move(s));
}

CovarianceMatrix apply_transform(const CovarianceMatrix& cm, const SymplecticTransform& s) {
  if (cm.matrix().rows() != s.matrix().rows()) {
    throw DomainError(fmt::format("apply_transform: dimension mismatch ({} vs {})",
                                  cm.matrix().rows(), s.matrix().rows()));
  }
  return CovarianceMatrix(s.matrix() * cm.matrix() * s.matrix().transpose());
}

Matrix principal_block(const Matrix& m, std::span<const int> indices) {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Matrix out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(indices[i], indices[j]);
  }
  return out;
}

Matrix condition_on_variables(const Matrix& joint, std::span<const int> keep,
                              std::span<const int> given) {
  const auto nk = static_cast<Eigen::Index>(keep.size());
  const auto ng = static_cast<Eigen::Index>(given.size());
  Matrix a = principal_block(joint, keep);
  if (ng == 0) return a;
  Matrix b = principal_block(joint, given);
  Matrix c(nk, ng);
  for (Eigen::Index i = 0; i < nk; ++i) {
    for (Eigen::Index j = 0; j < ng; ++j) c(i, j) = joint(keep[i], given[j]);
  }
  Eigen::LDLT<Matrix> ldlt(b);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      (ldlt.vectorD().array() <= 0.0).any()) {
    throw DomainError("condition_on_variables: conditioning block is singular");
  }
  Matrix out = a - c * ldlt.solve(c.transpose());
  return 0.5 * (out + out.transpose());
}

CovarianceMatrix condition_on_homodyne(const CovarianceMatrix& cm, int mode_index,
                                       Quadrature quadrature) {
  if (cm.n_modes() < 2) throw DomainError("condition_on_homodyne: need at least two modes");
  if (mode_index < 0 || mode_index >= cm.n_modes()) {
    throw DomainError("condition_on_homodyne: mode index out of range");
  }
  const int measured = 2 * mode_index + (quadrature == Quadrature::Q ? 0 : 1);
  const int block[2] = {2 * mode_index, 2 * mode_index + 1};
  const auto keep = complement_indices(static_cast<int>(cm.matrix().rows()), block);
  const double variance = cm(measured, measured);
  if (!(variance > 0.0)) throw DomainError("condition_on_homodyne: zero measured variance");
  // (Pi V_B Pi)^MP = Pi / V_measured for the rank-1 projector Pi on the measured quadrature.
  Matrix a = principal_block(cm.matrix(), keep);
  Vector c(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) c(static_cast<Eigen::Index>(i)) = cm(keep[i], measured);
  a -= c * c.transpose() / variance;
  return CovarianceMatrix(0.5 * (a + a.transpose()));
}

CovarianceMatrix condition_on_heterodyne(const CovarianceMatrix& cm, int mode_index) {
  if (cm.n_modes() < 2) throw DomainError("condition_on_heterodyne: need at least two modes");
  if (mode_index < 0 || mode_index >= cm.n_modes()) {
    throw DomainError("condition_on_heterodyne: mode index out of range");
  }
  const int block[2] = {2 * mode_index, 2 * mode_index + 1};
  const auto keep = complement_indices(static_cast<int>(cm.matrix().rows()), block);
  Matrix a = principal_block(cm.matrix(), keep);
  Matrix c(static_cast<Eigen::Index>(keep.size()), 2);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    c(static_cast<Eigen::Index>(i), 0) = cm(keep[i], block[0]);
    c(static_cast<Eigen::Index>(i), 1) = cm(keep[i], block[1]);
  }
  const Eigen::Matrix2d b = principal_block(cm.matrix(), block) + Eigen::Matrix2d::Identity();
  a -= c * b.inverse() * c.transpose();
  return CovarianceMatrix(0.5 * (a + a.transpose()));
}

}  // namespace cvqkd
