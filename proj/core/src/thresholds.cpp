#include "cvqkd/thresholds.hpp"

#include "cvqkd/attacks.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/key_rates.hpp"
#include "cvqkd/parallel.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <charconv>
#include <cmath>

namespace cvqkd {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr double kCrossoverTolerance = 1e-4;

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError(fmt::format("grid: cannot parse {} '{}'", what, text));
  }
  return value;
}

double rate_at(Protocol p, Reconciliation r, double t, double w, const ThresholdOptions& o) {
  const AttackParams params(t, w);
  const RateResult result = o.method == Method::ExactFiniteV
                                ? exact_rate(p, r, o.modulation, params)
                                : asymptotic_rate(p, r, params);
  return result.value;
}

// Slack allowed when checking that the rate decreases along the bracket.
// Rates built from numerically extracted eigenvalues carry ~1e-9 of noise.
double monotonicity_slack(Protocol p, Reconciliation r, const ThresholdOptions& o) {
  const bool numeric = o.method == Method::ExactFiniteV ||
                       (p == Protocol::Het2 && r == Reconciliation::RR);
  return numeric ? 1e-8 : 1e-11;
}

void require_order(double f_left, double f_mid, double f_right, double slack, double w,
                   Protocol p, Reconciliation r, double t) {
  if (f_mid > f_left + slack || f_mid < f_right - slack) {
    throw NumericError(fmt::format(
        "threshold: rate of {} {} is not decreasing in W near W={:.12g} at T={}", to_string(p),
        to_string(r), w, t));
  }
}

}  // namespace

TGrid TGrid::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw DomainError(fmt::format("grid '{}' is not of the form lo:hi:steps", text));
  }
  TGrid g;
  g.lo = parse_double(text.substr(0, first), "lo");
  g.hi = parse_double(text.substr(first + 1, second - first - 1), "hi");
  const std::string_view steps = text.substr(second + 1);
  const auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), g.steps);
  if (ec != std::errc() || ptr != steps.data() + steps.size()) {
    throw DomainError(fmt::format("grid: cannot parse steps '{}'", steps));
  }
  if (!(g.lo > 0.0 && g.lo <= g.hi && g.hi < 1.0)) {
    throw DomainError(fmt::format("grid: need 0 < lo <= hi < 1, got {}:{}", g.lo, g.hi));
  }
  if (g.steps < 0) throw DomainError("grid: steps must be >= 0");
  return g;
}

std::vector<double> TGrid::points() const {
  std::vector<double> out;
  if (steps <= 0) return out;
  if (steps == 1) return {lo};
  out.reserve(static_cast<std::size_t>(steps));
  const double step = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps - 1; ++i) out.push_back(lo + i * step);
  out.push_back(hi);
  return out;
}

double solve_threshold(Protocol p, Reconciliation r, double t, const ThresholdOptions& o) {
  AttackParams(t, 1.0).require_open_transmission();
  if (auto reason = divergence_reason(p, r)) throw DomainError(std::string(*reason));
  if (!(o.w_tolerance > 0.0)) throw DomainError("threshold: W tolerance must be positive");
  if (o.method == Method::MonteCarlo) {
    throw DomainError("threshold: bisection needs a deterministic rate (asymptotic or exact)");
  }

  const auto f = [&](double w) { return rate_at(p, r, t, w, o); };
  const double slack = monotonicity_slack(p, r, o);

  double lo = 1.0;
  double f_lo = f(lo);
  if (f_lo <= 0.0) return 0.0;

  double hi = 2.0;
  double f_hi = f(hi);
  while (f_hi > 0.0) {
    if (f_hi > f_lo + slack) {
      throw NumericError(fmt::format(
          "threshold: rate of {} {} increases from W={} to W={} at T={}", to_string(p),
          to_string(r), lo, hi, t));
    }
    if (hi >= o.w_max) {
      throw NumericError(fmt::format("threshold: no sign change of the {} {} rate for W <= {} at T={}",
                                     to_string(p), to_string(r), o.w_max, t));
    }
    lo = hi;
    f_lo = f_hi;
    hi = std::min(2.0 * hi, o.w_max);
    f_hi = f(hi);
  }

  while (hi - lo > o.w_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    require_order(f_lo, f_mid, f_hi, slack, mid, p, r, t);
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return excess_noise(AttackParams(t, 0.5 * (lo + hi)));
}

ThresholdCurve sweep_curve(Protocol p, Reconciliation r, const TGrid& grid,
                           const ThresholdOptions& o) {
  if (o.method == Method::MonteCarlo) {
    throw DomainError("threshold: bisection needs a deterministic rate (asymptotic or exact)");
  }
  ThresholdCurve curve;
  curve.protocol = p;
  curve.reconciliation = r;
  curve.options = o;
  curve.grid = grid;
  const std::vector<double> ts = grid.points();
  curve.points.resize(ts.size());
  parallel_for(
      ts.size(),
      [&](std::size_t i) {
        ThresholdPoint& pt = curve.points[i];
        pt.transmission = ts[i];
        try {
          pt.excess_noise = solve_threshold(p, r, ts[i], o);
        } catch (const Error& e) {
          pt.error = e.what();
        }
      },
      o.threads);
  return curve;
}

std::vector<double> crossover(const ThresholdCurve& a, const ThresholdCurve& b) {
  if (!(a.grid == b.grid) || a.points.size() != b.points.size()) {
    throw DomainError("crossover: curves are on different grids");
  }
  const auto diff_at = [&](double t) {
    return solve_threshold(a.protocol, a.reconciliation, t, a.options) -
           solve_threshold(b.protocol, b.reconciliation, t, b.options);
  };
  const auto sign = [](double d) { return std::abs(d) <= kTieTolerance ? 0 : (d > 0.0 ? 1 : -1); };

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < a.points.size(); ++i) {
    const auto &a0 = a.points[i], &a1 = a.points[i + 1];
    const auto &b0 = b.points[i], &b1 = b.points[i + 1];
    if (!a0.excess_noise || !a1.excess_noise || !b0.excess_noise || !b1.excess_noise) continue;
    const int s0 = sign(*a0.excess_noise - *b0.excess_noise);
    const int s1 = sign(*a1.excess_noise - *b1.excess_noise);
    if (s0 == 0 || s1 == 0 || s0 == s1) continue;
    double lo = a0.transmission;
    double hi = a1.transmission;
    while (hi - lo > kCrossoverTolerance) {
      const double mid = 0.5 * (lo + hi);
      const int s = sign(diff_at(mid));
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == s0 ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::string_view to_string(Dominance d) noexcept {
  switch (d) {
    case Dominance::TwoWayBetter: return "two_way";
    case Dominance::OneWayBetter: return "one_way";
    case Dominance::Tie: return "tie";
    case Dominance::Undetermined: return "undetermined";
  }
  return "unknown";
}

std::size_t SuperadditivityReport::count(Dominance d) const noexcept {
  return static_cast<std::size_t>(std::count(dominance.begin(), dominance.end(), d));
}

bool SuperadditivityReport::improves_everywhere() const noexcept {
  return !dominance.empty() && count(Dominance::TwoWayBetter) == dominance.size();
}

bool SuperadditivityReport::no_improvement() const noexcept {
  return count(Dominance::TwoWayBetter) == 0;
}

SuperadditivityReport superadditivity_report(const ThresholdCurve& one_way,
                                             const ThresholdCurve& two_way) {
  if (!(one_way.grid == two_way.grid) || one_way.points.size() != two_way.points.size()) {
    throw DomainError("superadditivity_report: curves are on different grids");
  }
  SuperadditivityReport report;
  report.one_way = one_way.protocol;
  report.two_way = two_way.protocol;
  report.reconciliation = one_way.reconciliation;
  for (std::size_t i = 0; i < one_way.points.size(); ++i) {
    const auto& o = one_way.points[i];
    const auto& t = two_way.points[i];
    report.transmissions.push_back(o.transmission);
    if (!o.excess_noise || !t.excess_noise) {
      report.dominance.push_back(Dominance::Undetermined);
      continue;
    }
    const double d = *t.excess_noise - *o.excess_noise;
    report.dominance.push_back(std::abs(d) <= kTieTolerance ? Dominance::Tie
                               : d > 0.0                   ? Dominance::TwoWayBetter
                                                           : Dominance::OneWayBetter);
  }
  report.crossovers = crossover(one_way, two_way);
  return report;
}

}  // namespace cvqkd
