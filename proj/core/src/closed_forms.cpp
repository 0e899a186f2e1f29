#include "cvqkd/errors.hpp"
#include "cvqkd/info_units.hpp"
#include "cvqkd/key_rates.hpp"

#include <fmt/core.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace cvqkd {

namespace {

RateResult make(Protocol p, Reconciliation r, const AttackParams& params, double value) {
  RateResult out;
  out.protocol = p;
  out.reconciliation = r;
  out.method = Method::Asymptotic;
  out.params = params;
  out.value = value;
  return out;
}

double b1(const AttackParams& a) { return (1.0 - a.transmission) * a.eve_variance + a.transmission; }
double e1(const AttackParams& a) { return (1.0 - a.transmission) + a.transmission * a.eve_variance; }

double log_e() { return info_log(std::numbers::e); }

// log 2T(1+T) / (e (1-T) [1 + T^2 + (1-T^2) W]), shared by both Het2 rates.
double het2_shannon_term(const AttackParams& a) {
  const double t = a.transmission;
  const double w = a.eve_variance;
  return info_log(2.0 * t * (1.0 + t) / ((1.0 - t) * (1.0 + t * t + (1.0 - t * t) * w))) - log_e();
}

}  // namespace

double RateResult::rate() const noexcept {
  return minus_infinity ? -std::numeric_limits<double>::infinity() : value;
}

OneWayCoefficients OneWayCoefficients::compute(const AttackParams& a, double v) {
  const double t = a.transmission;
  const double w = a.eve_variance;
  return {(1.0 - t) * w + t * v,
          (1.0 - t) * v + t * w,
          b1(a),
          e1(a),
          std::sqrt(t * (w * w - 1.0)),
          (w - v) * std::sqrt((1.0 - t) * t),
          std::sqrt((1.0 - t) * (w * w - 1.0))};
}

TwoWayCoefficients TwoWayCoefficients::compute(const AttackParams& a, double v) {
  const double t = a.transmission;
  const double w = a.eve_variance;
  const OneWayCoefficients one = OneWayCoefficients::compute(a, v);
  TwoWayCoefficients c{};
  c.mu_prime = -std::sqrt(1.0 - t) * one.mu;
  c.theta_prime = -std::sqrt(1.0 - t) * one.theta;
  c.gamma = t * (1.0 - t) * v + (1.0 - t) * (1.0 - t) * w + t * w;
  c.varsigma = std::sqrt(1.0 + t * t * (t * t + t - 2.0));
  c.upsilon = std::sqrt(1.0 + 3.0 * t + t * t);
  c.f_product = t;
  c.h_product = (1.0 - t) * (1.0 - t);
  c.m_product = std::sqrt((1.0 - t) * (1.0 - t) * (1.0 - t) * (1.0 + t * t * t) * w / t);
  c.n_product = het2_rr_eigenvalue_product(a);
  return c;
}

double het2_rr_eigenvalue_product(const AttackParams& a) {
  const double t = a.transmission;
  const double w = a.eve_variance;
  return (1.0 + t * t * t + (1.0 - t) * (1.0 + t * t) * w) * w / (t * (1.0 + t));
}

RateResult rate_dr_coll_het(const AttackParams& a) {
  a.require_open_transmission();
  const double t = a.transmission;
  return make(Protocol::CollHet, Reconciliation::DR, a,
              info_log(t / (1.0 - t)) - g_entropy(a.eve_variance));
}

RateResult rate_dr_hom(const AttackParams& a) {
  a.require_open_transmission();
  const double t = a.transmission;
  const double w = a.eve_variance;
  const double b = b1(a);
  const double e = e1(a);
  return make(Protocol::Hom, Reconciliation::DR, a,
              0.5 * info_log(t * e / ((1.0 - t) * b)) + g_entropy(std::sqrt(w * b / e)) -
                  g_entropy(w));
}

RateResult rate_dr_het(const AttackParams& a) {
  a.require_open_transmission();
  const double t = a.transmission;
  const double b = b1(a);
  return make(Protocol::Het, Reconciliation::DR, a,
              info_log(2.0 * t / ((1.0 - t) * (1.0 + b))) - log_e() + g_entropy(b) -
                  g_entropy(a.eve_variance));
}

RateResult rate_rr_coll_het(const AttackParams& a) {
  a.require_open_transmission();
  return make(Protocol::CollHet, Reconciliation::RR, a,
              info_log(1.0 / (1.0 - a.transmission)) - g_entropy(a.eve_variance) -
                  g_entropy(b1(a)));
}

RateResult rate_rr_hom(const AttackParams& a) {
  a.require_open_transmission();
  const double w = a.eve_variance;
  return make(Protocol::Hom, Reconciliation::RR, a,
              0.5 * info_log(w / ((1.0 - a.transmission) * b1(a))) - g_entropy(w));
}

RateResult rate_rr_het(const AttackParams& a) {
  a.require_open_transmission();
  const double t = a.transmission;
  const double b = b1(a);
  return make(Protocol::Het, Reconciliation::RR, a,
              info_log(2.0 * t / ((1.0 - t) * (1.0 + b))) - log_e() +
                  g_entropy((1.0 - t + b) / t) - g_entropy(a.eve_variance));
}

RateResult rate_dr_coll_hom2(const AttackParams& a) {
  a.require_open_transmission();
  const double t = a.transmission;
  return make(Protocol::CollHom2, Reconciliation::DR, a,
              0.5 * info_log(t / ((1.0 - t) * (1.0 - t))) - g_entropy(a.eve_variance));
}

RateResult rate_dr_coll_het2(const AttackParams& a) {
  RateResult r = rate_dr_coll_hom2(a);
  r.protocol = Protocol::CollHet2;
  r.value *= 2.0;
  return r;
}

RateResult rate_dr_het2(const AttackParams& a) {
  a.require_open_transmission();
  return make(Protocol::Het2, Reconciliation::DR, a,
              het2_shannon_term(a) - g_entropy(a.eve_variance));
}

RateResult rate_rr_hom2(const AttackParams& a) {
  a.require_open_transmission();
  const double t = a.transmission;
  return make(Protocol::Hom2, Reconciliation::RR, a,
              0.5 * info_log((1.0 - t + t * t) / ((1.0 - t) * (1.0 - t))) -
                  g_entropy(a.eve_variance));
}

RateResult rate_rr_het2(const AttackParams& a) {
  a.require_open_transmission();
  const auto n = het2_rr_conditional_eigenvalues(a);
  return make(Protocol::Het2, Reconciliation::RR, a,
              het2_shannon_term(a) + g_entropy(n[0]) + g_entropy(n[1]) + g_entropy(n[2]) -
                  2.0 * g_entropy(a.eve_variance));
}

RateResult asymptotic_rate(Protocol p, Reconciliation r, const AttackParams& a) {
  a.require_open_transmission();
  if (divergence_reason(p, r)) {
    RateResult out = make(p, r, a, 0.0);
    out.minus_infinity = true;
    return out;
  }
  RateResult out;
  if (r == Reconciliation::DR) {
    switch (p) {
      case Protocol::Hom:
      case Protocol::CollHom: out = rate_dr_hom(a); break;
      case Protocol::Het: out = rate_dr_het(a); break;
      case Protocol::CollHet: out = rate_dr_coll_het(a); break;
      case Protocol::Hom2:
      case Protocol::CollHom2: out = rate_dr_coll_hom2(a); break;
      case Protocol::Het2: out = rate_dr_het2(a); break;
      case Protocol::CollHet2: out = rate_dr_coll_het2(a); break;
    }
  } else {
    switch (p) {
      case Protocol::Hom: out = rate_rr_hom(a); break;
      case Protocol::Het: out = rate_rr_het(a); break;
      case Protocol::CollHet: out = rate_rr_coll_het(a); break;
      case Protocol::Hom2: out = rate_rr_hom2(a); break;
      case Protocol::Het2: out = rate_rr_het2(a); break;
      default:
        throw DomainError(fmt::format("no RR rate for protocol {}", to_string(p)));
    }
  }
  out.protocol = p;
  return out;
}

}  // namespace cvqkd
