#include "cvqkd/errors.hpp"
#include "cvqkd/info_units.hpp"
#include "cvqkd/key_rates.hpp"
#include "cvqkd/phase_space_model.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace cvqkd {

namespace {

// Joint covariance of every variable a protocol run exposes, with index bookkeeping.
struct Circuit {
  Matrix joint;
  std::vector<int> alice;  // Q_A, P_A
  std::vector<int> bob;    // quadratures of Bob's modes
  std::vector<int> eve;    // quadratures of Eve's modes
  int hom = -1;            // Bob's homodyne output
  std::vector<int> het;    // Bob's heterodyne pair
};

class CircuitBuilder {
 public:
  int add(const LinearForm& f) {
    forms_.push_back(f);
    return static_cast<int>(forms_.size()) - 1;
  }
  std::vector<int> add(const ModeForms& m) { return {add(m.q), add(m.p)}; }

  Matrix covariance(const PhaseSpaceModel& model) const { return model.covariance(forms_); }

 private:
  std::vector<LinearForm> forms_;
};

void append(std::vector<int>& to, const std::vector<int>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

LinearForm scaled_sum(double a, const LinearForm& x, double b, const LinearForm& y) {
  return a * x + b * y;
}

// Signal = Alice's classical modulation on a vacuum, through one cloner; Bob's heterodyne
// mixes in a vacuum as (Q_B + Q_0, P_B - P_0) / sqrt(2).
Circuit one_way_circuit(const Modulation& mod, const AttackParams& attack) {
  PhaseSpaceModel model;
  const int qa = model.add_source(Matrix::Identity(1, 1) * mod.alice_q);
  const int pa = model.add_source(Matrix::Identity(1, 1) * mod.alice_p);
  const ModeForms alice{LinearForm::variable(qa), LinearForm::variable(pa)};
  const ModeForms signal = displace(model.add_vacuum(), alice);
  const auto [e, e2] = model.add_epr(attack.eve_variance);
  const auto [b, e1] = mix(signal, e, attack.transmission);
  const ModeForms v0 = model.add_vacuum();

  CircuitBuilder cb;
  Circuit c;
  append(c.alice, cb.add(alice));
  append(c.bob, cb.add(b));
  append(c.eve, cb.add(e1));
  append(c.eve, cb.add(e2));
  const double h = 1.0 / std::sqrt(2.0);
  c.hom = c.bob[0];
  c.het = {cb.add(scaled_sum(h, b.q, h, v0.q)), cb.add(scaled_sum(h, b.p, -h, v0.p))};
  c.joint = cb.covariance(model);
  return c;
}

// Bob's EPR pair (B1, C1); C1 crosses the first cloner to Alice, who displaces it; the
// result crosses the second cloner back to Bob as B2.
Circuit two_way_circuit(const Modulation& mod, const AttackParams& attack) {
  PhaseSpaceModel model;
  const int qa = model.add_source(Matrix::Identity(1, 1) * mod.alice_q);
  const int pa = model.add_source(Matrix::Identity(1, 1) * mod.alice_p);
  const ModeForms alice{LinearForm::variable(qa), LinearForm::variable(pa)};
  const auto [b1, c1] = model.add_epr(mod.total);
  const auto [e1, e1pp] = model.add_epr(attack.eve_variance);
  const auto [e2, e2pp] = model.add_epr(attack.eve_variance);
  const auto [a1, e1p] = mix(c1, e1, attack.transmission);
  const auto [b2, e2p] = mix(displace(a1, alice), e2, attack.transmission);
  const ModeForms v0 = model.add_vacuum();
  const ModeForms v1 = model.add_vacuum();

  const double t = attack.transmission;
  const double h = 1.0 / std::sqrt(2.0);
  CircuitBuilder cb;
  Circuit c;
  append(c.alice, cb.add(alice));
  append(c.bob, cb.add(b1));
  append(c.bob, cb.add(b2));
  append(c.eve, cb.add(e1p));
  append(c.eve, cb.add(e1pp));
  append(c.eve, cb.add(e2p));
  append(c.eve, cb.add(e2pp));
  c.hom = cb.add(b2.q - t * b1.q);
  const LinearForm q_minus = scaled_sum(h, b1.q, -h, v0.q);
  const LinearForm p_plus = scaled_sum(h, b1.p, h, v0.p);
  const LinearForm big_q_minus = scaled_sum(h, b2.q, -h, v1.q);
  const LinearForm big_p_plus = scaled_sum(h, b2.p, h, v1.p);
  c.het = {cb.add(big_q_minus - t * q_minus), cb.add(big_p_plus + t * p_plus)};
  c.joint = cb.covariance(model);
  return c;
}

Circuit build(Scheme scheme, const Modulation& mod, const AttackParams& attack) {
  return scheme == Scheme::OneWay ? one_way_circuit(mod, attack) : two_way_circuit(mod, attack);
}

Modulation protocol_modulation(Protocol p, double v, std::optional<double> alice) {
  if (!(v > 1.0) || !std::isfinite(v)) {
    throw DomainError(fmt::format("modulation V={} must be finite and > 1", v));
  }
  Modulation m = Modulation::identical(v);
  if (alice) {
    if (!is_two_way(p)) throw DomainError("alice_modulation applies to two-way protocols only");
    if (!(*alice > 0.0) || !std::isfinite(*alice)) {
      throw DomainError(fmt::format("alice_modulation={} must be finite and > 0", *alice));
    }
    m.alice_q = m.alice_p = *alice;
  }
  return m;
}

std::vector<int> alice_data(const Circuit& c, Protocol p) {
  return is_joint(p) ? c.alice : std::vector<int>{c.alice[0]};
}

std::vector<int> bob_data(const Circuit& c, Protocol p) {
  return is_joint(p) ? c.het : std::vector<int>{c.hom};
}

// Conditioning on a variable of zero variance is a no-op (it is a constant).
std::vector<int> informative(const Matrix& joint, const std::vector<int>& given) {
  std::vector<int> out;
  for (int i : given) {
    if (joint(i, i) > 0.0) out.push_back(i);
  }
  return out;
}

Matrix conditioned(const Circuit& c, const std::vector<int>& keep, const std::vector<int>& given) {
  return condition_on_variables(c.joint, keep, informative(c.joint, given));
}

double entropy(const Matrix& cm) { return von_neumann_entropy(CovarianceMatrix(cm)); }

double log_det(const Matrix& m) {
  Eigen::LDLT<Matrix> ldlt(m);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any()) {
    throw NumericError("singular classical covariance in a Shannon term");
  }
  double s = 0.0;
  for (double d : ldlt.vectorD()) s += info_log(d);
  return s;
}

// Residual covariance of Eve's quadratures after subtracting the large-V optimal linear
// estimators built from Bob's outcome.
Matrix estimator_residual(const Circuit& c, Protocol p, double t) {
  const std::vector<int> x = bob_data(c, p);
  const auto ne = static_cast<Eigen::Index>(c.eve.size());
  const auto nx = static_cast<Eigen::Index>(x.size());
  // Estimators act on the first Eve mode (E') one way, on E2' two way.
  const Eigen::Index target = is_two_way(p) ? 4 : 0;
  const double k = -std::sqrt((is_joint(p) ? 2.0 : 1.0) * (1.0 - t) / t);
  Matrix gain = Matrix::Zero(ne, nx);
  for (Eigen::Index j = 0; j < nx; ++j) gain(target + j, j) = k;

  Matrix see = principal_block(c.joint, c.eve);
  Matrix sxx = principal_block(c.joint, x);
  Matrix sex(ne, nx);
  for (Eigen::Index i = 0; i < ne; ++i) {
    for (Eigen::Index j = 0; j < nx; ++j) sex(i, j) = c.joint(c.eve[i], x[j]);
  }
  Matrix out = see - gain * sex.transpose() - sex * gain.transpose() + gain * sxx * gain.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

Modulation Modulation::identical(double total) { return {total, total - 1.0, total - 1.0}; }

InformationTerms exact_information_terms(Protocol p, Reconciliation r, double v,
                                         const AttackParams& attack, const ExactOptions& options) {
  attack.require_open_transmission();
  if (auto reason = divergence_reason(p, r)) throw DomainError(std::string(*reason));
  const Modulation mod = protocol_modulation(p, v, options.alice_modulation);
  const Circuit c = build(is_two_way(p) ? Scheme::TwoWay : Scheme::OneWay, mod, attack);
  const std::vector<int> xa = alice_data(c, p);

  InformationTerms out;
  if (is_collective(p)) {
    out.alice_bob = entropy(principal_block(c.joint, c.bob)) - entropy(conditioned(c, c.bob, xa));
  } else {
    const std::vector<int> xb = bob_data(c, p);
    out.alice_bob =
        0.5 * (log_det(principal_block(c.joint, xb)) - log_det(conditioned(c, xb, xa)));
  }

  const double s_e = entropy(principal_block(c.joint, c.eve));
  if (r == Reconciliation::DR) {
    out.eve = s_e - entropy(conditioned(c, c.eve, xa));
  } else if (is_collective(p)) {
    // I(B:E); only CollHet reaches here.
    std::vector<int> be = c.bob;
    append(be, c.eve);
    out.eve = entropy(principal_block(c.joint, c.bob)) + s_e - entropy(principal_block(c.joint, be));
  } else if (options.rr_conditioning == RrConditioning::General) {
    out.eve = s_e - entropy(conditioned(c, c.eve, bob_data(c, p)));
  } else {
    out.eve = s_e - entropy(estimator_residual(c, p, attack.transmission));
  }
  return out;
}

RateResult exact_rate(Protocol p, Reconciliation r, double v, const AttackParams& attack,
                      const ExactOptions& options) {
  attack.require_open_transmission();
  protocol_modulation(p, v, options.alice_modulation);
  RateResult out;
  out.protocol = p;
  out.reconciliation = r;
  out.method = Method::ExactFiniteV;
  out.params = attack;
  out.modulation = v;
  if (divergence_reason(p, r)) {
    out.minus_infinity = true;
    return out;
  }
  const InformationTerms terms = exact_information_terms(p, r, v, attack, options);
  out.value = terms.alice_bob - terms.eve;
  return out;
}

OutputStatistics exact_output_statistics(Protocol p, double v, const AttackParams& attack,
                                         std::optional<double> alice_modulation) {
  if (is_collective(p)) {
    throw DomainError(fmt::format("{} has no classical output variable", to_string(p)));
  }
  const Modulation mod = protocol_modulation(p, v, alice_modulation);
  const Circuit c = build(is_two_way(p) ? Scheme::TwoWay : Scheme::OneWay, mod, attack);
  const std::vector<int> xb = bob_data(c, p);
  OutputStatistics out;
  for (std::size_t d = 0; d < xb.size(); ++d) {
    const int x = xb[d];
    const double var = c.joint(x, x);
    const double cond = conditioned(c, {x}, {c.alice[d]})(0, 0);
    out.variance.push_back(var);
    out.conditional_variance.push_back(cond);
    out.mutual_information += 0.5 * info_log(var / cond);
  }
  return out;
}

CovarianceMatrix exact_cm(Scheme scheme, Party party, Conditioning conditioning,
                          const AttackParams& attack, const Modulation& mod) {
  if (!(mod.total >= 1.0) || !(mod.alice_q >= 0.0) || !(mod.alice_p >= 0.0)) {
    throw DomainError("exact_cm: modulation variances out of range");
  }
  const Circuit c = build(scheme, mod, attack);
  std::vector<int> keep;
  switch (party) {
    case Party::Bob: keep = c.bob; break;
    case Party::Eve: keep = c.eve; break;
    case Party::BobEve:
      keep = c.bob;
      append(keep, c.eve);
      break;
  }
  std::vector<int> given;
  switch (conditioning) {
    case Conditioning::None: break;
    case Conditioning::QA: given = {c.alice[0]}; break;
    case Conditioning::QAPA: given = c.alice; break;
    case Conditioning::QB: given = {c.hom}; break;
    case Conditioning::QBPB: given = c.het; break;
  }
  const bool on_bob = conditioning == Conditioning::QB || conditioning == Conditioning::QBPB;
  if (on_bob && party != Party::Eve) {
    throw DomainError("exact_cm: conditioning on Bob's outcome is defined for Eve's state only");
  }
  return CovarianceMatrix(conditioned(c, keep, given));
}

namespace {

using ExtMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using ExtRow = Eigen::Matrix<long double, 1, 18>;

// Eve's state given Bob's Het2 pair, for the two-way circuit rebuilt in long double: the
// extrapolation below needs V far above W / (1 - T^2), where double roundoff in the
// V-sized entries reaches 1e-7.
// Sources: Alice (q, p) | B1 C1 | E1 E1'' | E2 E2'' | V0 | V1.
ExtMatrix het2_eve_given_het(long double t, long double w, long double v) {
  ExtMatrix s = ExtMatrix::Zero(18, 18);
  s(0, 0) = s(1, 1) = v - 1.0L;
  auto epr = [&s](int i, int j, long double x) {
    const long double c = std::sqrt(x * x - 1.0L);
    for (int k = 0; k < 2; ++k) s(i + k, i + k) = s(j + k, j + k) = x;
    s(i, j) = s(j, i) = c;
    s(i + 1, j + 1) = s(j + 1, i + 1) = -c;
  };
  epr(2, 4, v);
  epr(6, 8, w);
  epr(10, 12, w);
  for (int k = 14; k < 18; ++k) s(k, k) = 1.0L;

  auto unit = [](int i) {
    ExtRow r = ExtRow::Zero();
    r(i) = 1.0L;
    return r;
  };
  const long double st = std::sqrt(t);
  const long double sr = std::sqrt(1.0L - t);
  const long double h = 1.0L / std::sqrt(2.0L);
  const ExtRow a1q = st * unit(4) + sr * unit(6);
  const ExtRow a1p = st * unit(5) + sr * unit(7);
  const ExtRow a2q = a1q + unit(0);
  const ExtRow a2p = a1p + unit(1);

  ExtMatrix l(10, 18);
  l.row(0) = -sr * unit(4) + st * unit(6);
  l.row(1) = -sr * unit(5) + st * unit(7);
  l.row(2) = unit(8);
  l.row(3) = unit(9);
  l.row(4) = -sr * a2q + st * unit(10);
  l.row(5) = -sr * a2p + st * unit(11);
  l.row(6) = unit(12);
  l.row(7) = unit(13);
  l.row(8) = h * (st * a2q + sr * unit(10) - unit(16)) - t * h * (unit(2) - unit(14));
  l.row(9) = h * (st * a2p + sr * unit(11) + unit(17)) + t * h * (unit(3) + unit(15));

  const ExtMatrix joint = l * s * l.transpose();
  return joint.topLeftCorner(8, 8) - joint.topRightCorner(8, 2) *
                                         joint.bottomRightCorner(2, 2).inverse() *
                                         joint.bottomLeftCorner(2, 8);
}

// Three finite eigenvalues of Eve's Het2-conditioned state at modulation V, descending.
std::array<long double, 3> het2_finite_eigenvalues(const AttackParams& attack, long double v) {
  const long double t = attack.transmission;
  const ExtMatrix m = het2_eve_given_het(t, attack.eve_variance, v);

  using Complex = std::complex<long double>;
  Eigen::Matrix<Complex, 8, 8> a;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      // row i of Omega M, Omega = diag([[0, 1], [-1, 0]])
      const long double om = (i % 2 == 0) ? m(i + 1, j) : -m(i - 1, j);
      a(i, j) = Complex(0.0L, om);
    }
  }
  const Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 8, 8>> solver(a, false);
  std::vector<long double> spectrum;
  for (int i = 0; i < 8; ++i) {
    if (solver.eigenvalues()(i).real() > 0.0L) spectrum.push_back(solver.eigenvalues()(i).real());
  }
  if (spectrum.size() != 4) {
    throw NumericError(fmt::format("Het2 RR: symplectic spectrum does not pair at T={}, W={}",
                                   attack.transmission, attack.eve_variance));
  }
  std::sort(spectrum.rbegin(), spectrum.rend());

  const long double divergent = (1.0L - t * t) * v;
  auto nearest = std::min_element(spectrum.begin(), spectrum.end(), [&](long double x, long double y) {
    return std::abs(x - divergent) < std::abs(y - divergent);
  });
  if (std::abs(*nearest - divergent) > 0.01L * divergent) {
    throw NumericError(fmt::format(
        "Het2 RR: expected one eigenvalue near (1-T^2)V = {:.6g} at T={}, W={}",
        static_cast<double>(divergent), attack.transmission, attack.eve_variance));
  }
  spectrum.erase(nearest);
  return {spectrum[0], spectrum[1], spectrum[2]};
}

}  // namespace

std::array<double, 3> het2_rr_conditional_eigenvalues(const AttackParams& attack) {
  attack.require_open_transmission();
  // The finite eigenvalues approach their limits as a series in 1/V whose coefficients
  // grow like W / (1 - T^2) and 1/T. Two Richardson levels over V0 * {1, 10, 100} remove
  // the 1/V and 1/V^2 terms.
  const double t = attack.transmission;
  const long double v0 =
      1e4L * std::max({1.0L, static_cast<long double>(attack.eve_variance) / (1.0L - t * t),
                       1.0L / static_cast<long double>(t)});
  constexpr long double kRatio = 10.0L;
  std::array<std::array<long double, 3>, 3> level{};
  for (std::size_t i = 0; i < level.size(); ++i) {
    level[i] = het2_finite_eigenvalues(attack, v0 * std::pow(kRatio, static_cast<long double>(i)));
  }
  std::array<double, 3> finite{};
  for (std::size_t k = 0; k < 3; ++k) {
    const long double r1 = (kRatio * level[1][k] - level[0][k]) / (kRatio - 1.0L);
    const long double r2 = (kRatio * level[2][k] - level[1][k]) / (kRatio - 1.0L);
    finite[k] = static_cast<double>((kRatio * kRatio * r2 - r1) / (kRatio * kRatio - 1.0L));
  }
  const double product = finite[0] * finite[1] * finite[2];
  const double expected = het2_rr_eigenvalue_product(attack);
  if (std::abs(product - expected) > 1e-6 * expected) {
    throw NumericError(fmt::format(
        "Het2 RR: eigenvalue product {:.12g} misses the closed form {:.12g} at T={}, W={}",
        product, expected, t, attack.eve_variance));
  }
  return finite;
}

}  // namespace cvqkd
