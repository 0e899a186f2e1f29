#include "cvqkd/phase_space_model.hpp"

#include "cvqkd/errors.hpp"

#include <cmath>

namespace cvqkd {

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  for (const auto& [index, coeff] : other.terms_) terms_[index] += coeff;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  for (const auto& [index, coeff] : other.terms_) terms_[index] -= coeff;
  return *this;
}

LinearForm& LinearForm::operator*=(double factor) {
  for (auto& [index, coeff] : terms_) coeff *= factor;
  return *this;
}

int PhaseSpaceModel::add_source(const Matrix& covariance) {
  if (covariance.rows() != covariance.cols() || covariance.rows() == 0) {
    throw DomainError("PhaseSpaceModel: source covariance must be square and non-empty");
  }
  const int offset = dimension_;
  blocks_.push_back({offset, covariance});
  dimension_ += static_cast<int>(covariance.rows());
  return offset;
}

ModeForms PhaseSpaceModel::add_vacuum() {
  const int i = add_source(Matrix::Identity(2, 2));
  return {LinearForm::variable(i), LinearForm::variable(i + 1)};
}

ModeForms PhaseSpaceModel::add_modulation(double variance) {
  if (!(variance >= 0.0)) throw DomainError("PhaseSpaceModel: negative modulation variance");
  const int i = add_source(variance * Matrix::Identity(2, 2));
  return {LinearForm::variable(i), LinearForm::variable(i + 1)};
}

std::pair<ModeForms, ModeForms> PhaseSpaceModel::add_epr(double variance) {
  const int i = add_source(epr_cm(variance).matrix());
  return {{LinearForm::variable(i), LinearForm::variable(i + 1)},
          {LinearForm::variable(i + 2), LinearForm::variable(i + 3)}};
}

Matrix PhaseSpaceModel::covariance(std::span<const LinearForm> forms) const {
  const auto k = static_cast<Eigen::Index>(forms.size());
  Matrix rows = Matrix::Zero(k, dimension_);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (const auto& [index, coeff] : forms[static_cast<std::size_t>(r)].terms()) {
      if (index < 0 || index >= dimension_) {
        throw DomainError("PhaseSpaceModel: form references an unknown source variable");
      }
      rows(r, index) = coeff;
    }
  }
  Matrix out = Matrix::Zero(k, k);
  for (const auto& block : blocks_) {
    const auto w = block.covariance.rows();
    const auto slice = rows.middleCols(block.offset, w);
    out.noalias() += slice * block.covariance * slice.transpose();
  }
  return 0.5 * (out + out.transpose());
}

std::pair<ModeForms, ModeForms> mix(const ModeForms& signal, const ModeForms& ancilla,
                                    double transmission) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError("mix: transmission outside [0, 1]");
  }
  const double t = std::sqrt(transmission);
  const double r = std::sqrt(1.0 - transmission);
  ModeForms out{t * signal.q + r * ancilla.q, t * signal.p + r * ancilla.p};
  ModeForms reflected{-r * signal.q + t * ancilla.q, -r * signal.p + t * ancilla.p};
  return {std::move(out), std::move(reflected)};
}

ModeForms displace(const ModeForms& mode, const ModeForms& shift) {
  return {mode.q + shift.q, mode.p + shift.p};
}

}  // namespace cvqkd
