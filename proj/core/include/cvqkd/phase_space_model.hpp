#pragma once

// Linear Gaussian bookkeeping for prepare-and-measure circuits.
//
// Every quadrature (or classical variable) in a circuit built from beam splitters,
// displacements and linear post-processing is a linear combination of independent
// Gaussian sources: vacua, EPR pairs, classical modulations. The model records the
// sources' covariance blocks and evaluates the joint symmetrized covariance of any
// set of such combinations, so conditioning on classical data reduces to a Schur
// complement of one matrix.

#include "cvqkd/gaussian.hpp"

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace cvqkd {

/// Sparse linear combination of source variables.
class LinearForm {
 public:
  LinearForm() = default;
  static LinearForm variable(int index) {
    LinearForm f;
    f.terms_[index] = 1.0;
    return f;
  }

  const std::map<int, double>& terms() const noexcept { return terms_; }

  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm& operator*=(double factor);

  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(double k, LinearForm a) { return a *= k; }
  friend LinearForm operator*(LinearForm a, double k) { return a *= k; }
  friend LinearForm operator-(LinearForm a) { return a *= -1.0; }

 private:
  std::map<int, double> terms_;
};

/// Quadrature pair of one bosonic mode.
struct ModeForms {
  LinearForm q;
  LinearForm p;
};

class PhaseSpaceModel {
 public:
  /// Registers an independent Gaussian source with the given covariance, returning the
  /// index of its first variable.
  int add_source(const Matrix& covariance);

  ModeForms add_vacuum();
  /// Two classical zero-mean variables with equal variance (a Gaussian modulation).
  ModeForms add_modulation(double variance);
  /// EPR pair of variance V, returned as (first mode, second mode).
  std::pair<ModeForms, ModeForms> add_epr(double variance);

  int dimension() const noexcept { return dimension_; }

  /// Joint covariance of the listed forms.
  Matrix covariance(std::span<const LinearForm> forms) const;

 private:
  struct Block {
    int offset;
    Matrix covariance;
  };
  std::vector<Block> blocks_;
  int dimension_ = 0;
};

/// Beam splitter of transmission T: returns (transmitted, reflected) as in beam_splitter().
std::pair<ModeForms, ModeForms> mix(const ModeForms& signal, const ModeForms& ancilla,
                                    double transmission);

/// Adds a classical displacement to a mode.
ModeForms displace(const ModeForms& mode, const ModeForms& shift);

}  // namespace cvqkd
