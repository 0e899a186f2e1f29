#include "cvqkd/errors.hpp"
#include "cvqkd/key_rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cvqkd {

namespace {

AsymptoticSpectrum one_way(Party party, Conditioning cond, const AttackParams& a, double v) {
  const double t = a.transmission;
  const double w = a.eve_variance;
  const OneWayCoefficients c = OneWayCoefficients::compute(a, v);
  using C = Conditioning;
  AsymptoticSpectrum s;
  if (party == Party::Bob) {
    switch (cond) {
      case C::None: s.known = {t * v}; return s;
      case C::QA: s.known = {std::sqrt(c.b_1 * t * v)}; return s;
      case C::QAPA: s.known = {c.b_1}; return s;
      default: break;
    }
  } else if (party == Party::Eve) {
    switch (cond) {
      case C::None: s.known = {(1.0 - t) * v, w}; return s;
      case C::QA: s.known = {std::sqrt(c.e_1 * (1.0 - t) * v), std::sqrt(w * c.b_1 / c.e_1)}; return s;
      case C::QAPA: s.known = {c.b_1, 1.0}; return s;
      case C::QB: s.known = {std::sqrt(v * w * (1.0 - t) / t), 1.0}; return s;
      case C::QBPB: s.known = {(1.0 - t + c.b_1) / t, 1.0}; return s;
    }
  } else if (cond == C::None) {
    s.known = {v, 1.0, 1.0};
    return s;
  }
  throw DomainError("asymptotic_spectra: no large-V spectrum for this one-way state");
}

AsymptoticSpectrum two_way(Party party, Conditioning cond, const AttackParams& a, double v) {
  const double t = a.transmission;
  const double w = a.eve_variance;
  const TwoWayCoefficients c = TwoWayCoefficients::compute(a, v);
  using C = Conditioning;
  AsymptoticSpectrum s;
  if (party == Party::Bob) {
    switch (cond) {
      case C::None: s.groups = {{2, c.f_product * v * v}}; return s;
      case C::QA:
        s.known = {c.varsigma * v, std::sqrt(t * (1.0 - t * t) * w * v) / c.varsigma};
        return s;
      case C::QAPA: s.known = {(1.0 - t * t) * v, w}; return s;
      default: break;
    }
  } else if (party == Party::Eve) {
    switch (cond) {
      case C::None:
        s.known = {w, w};
        s.groups = {{2, c.h_product * v * v}};
        return s;
      case C::QA:
        s.known = {c.upsilon * (1.0 - t) * v, std::sqrt((1.0 - t * t) * w * v) / c.upsilon, w, 1.0};
        return s;
      case C::QAPA: s.known = {(1.0 - t * t) * v, w, 1.0, 1.0}; return s;
      case C::QB:
        s.known = {w, 1.0};
        s.groups = {{2, c.m_product * v * std::sqrt(v)}};
        return s;
      case C::QBPB:
        s.known = {(1.0 - t * t) * v};
        s.groups = {{3, c.n_product}};
        return s;
    }
  }
  throw DomainError("asymptotic_spectra: no large-V spectrum for this two-way state");
}

}  // namespace

std::size_t AsymptoticSpectrum::size() const noexcept {
  std::size_t n = known.size();
  for (const auto& g : groups) n += static_cast<std::size_t>(g.count);
  return n;
}

AsymptoticSpectrum asymptotic_spectra(Scheme scheme, Party party, Conditioning conditioning,
                                      const AttackParams& params, double modulation) {
  params.require_open_transmission();
  if (!(modulation > 1.0)) throw DomainError("asymptotic_spectra: modulation V must be > 1");
  return scheme == Scheme::OneWay ? one_way(party, conditioning, params, modulation)
                                  : two_way(party, conditioning, params, modulation);
}

double spectrum_mismatch(const SymplecticSpectrum& numeric, const AsymptoticSpectrum& oracle) {
  if (numeric.size() != oracle.size()) {
    throw DomainError("spectrum_mismatch: spectra have different sizes");
  }
  std::vector<double> left = numeric.values;
  double worst = 0.0;
  for (double ref : oracle.known) {
    auto best = left.end();
    double best_err = std::numeric_limits<double>::infinity();
    for (auto it = left.begin(); it != left.end(); ++it) {
      const double err = std::abs(*it - ref) / ref;
      if (err < best_err) {
        best_err = err;
        best = it;
      }
    }
    worst = std::max(worst, best_err);
    left.erase(best);
  }
  std::sort(left.begin(), left.end(), std::greater<>());
  std::size_t pos = 0;
  for (const auto& group : oracle.groups) {
    double product = 1.0;
    for (int k = 0; k < group.count; ++k) product *= left[pos++];
    worst = std::max(worst, std::abs(product - group.product) / group.product);
  }
  return worst;
}

}  // namespace cvqkd
