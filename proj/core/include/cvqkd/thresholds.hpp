#pragma once

// Security thresholds: the excess noise N at which a rate crosses zero, as a function of T.

#include "cvqkd/protocol.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvqkd {

/// Inclusive grid of `steps` evenly spaced transmissions from lo to hi.
struct TGrid {
  double lo = 0.02;
  double hi = 0.98;
  int steps = 193;

  /// Parses "lo:hi:steps". Throws DomainError unless 0 < lo <= hi < 1 and steps >= 0.
  static TGrid parse(std::string_view text);

  std::vector<double> points() const;
  bool operator==(const TGrid&) const = default;
};

struct ThresholdOptions {
  /// Asymptotic (closed forms) or ExactFiniteV at `modulation`.
  Method method = Method::Asymptotic;
  double modulation = 1e6;
  double w_tolerance = 1e-10;
  double w_max = 1e6;
  /// Worker threads for sweeps (0 = default_thread_count()).
  unsigned threads = 0;
};

/// Threshold N(T) solving rate(T, W) = 0 by bisection on W in [1, W_hi], with W_hi
/// doubled from 2 until the rate turns negative. Returns 0 when the rate is already
/// <= 0 at W = 1. Throws NumericError when the rate is not decreasing along the bracket
/// or keeps its sign up to w_max, and DomainError for divergent (protocol, recon) pairs
/// or Method::MonteCarlo.
double solve_threshold(Protocol protocol, Reconciliation recon, double transmission,
                       const ThresholdOptions& options = {});

struct ThresholdPoint {
  double transmission = 0.0;
  /// Empty when the solver failed at this point; `error` then holds the reason.
  std::optional<double> excess_noise;
  std::string error;
};

struct ThresholdCurve {
  Protocol protocol = Protocol::Hom;
  Reconciliation reconciliation = Reconciliation::DR;
  ThresholdOptions options;
  TGrid grid;
  std::vector<ThresholdPoint> points;
};

/// Solves every grid point in parallel; per-point failures are recorded, not thrown.
ThresholdCurve sweep_curve(Protocol protocol, Reconciliation recon, const TGrid& grid,
                           const ThresholdOptions& options = {});

/// Transmissions where N_a - N_b changes sign strictly between neighbouring grid points,
/// refined by bisection to 1e-4 in T. Throws DomainError for curves on different grids.
std::vector<double> crossover(const ThresholdCurve& a, const ThresholdCurve& b);

enum class Dominance { TwoWayBetter, OneWayBetter, Tie, Undetermined };

std::string_view to_string(Dominance d) noexcept;

struct SuperadditivityReport {
  Protocol one_way = Protocol::Hom;
  Protocol two_way = Protocol::Hom2;
  Reconciliation reconciliation = Reconciliation::DR;
  std::vector<double> transmissions;
  std::vector<Dominance> dominance;
  std::vector<double> crossovers;

  std::size_t count(Dominance d) const noexcept;
  /// Two-way strictly better at every point.
  bool improves_everywhere() const noexcept;
  /// Two-way never strictly better.
  bool no_improvement() const noexcept;
};

/// Per-point comparison; differences within 1e-9 count as ties.
SuperadditivityReport superadditivity_report(const ThresholdCurve& one_way,
                                             const ThresholdCurve& two_way);

}  // namespace cvqkd
