#pragma once

// Secret-key rates of the one-way and two-way protocols under an entangling-cloner
// attack: closed forms valid for V -> infinity, and an exact engine that rebuilds
// every covariance matrix at finite modulation.
//
// Rates are expressed in the active information unit (see info_units.hpp).

#include "cvqkd/attacks.hpp"
#include "cvqkd/gaussian.hpp"
#include "cvqkd/protocol.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cvqkd {

struct RateResult {
  Protocol protocol = Protocol::Hom;
  Reconciliation reconciliation = Reconciliation::DR;
  Method method = Method::Asymptotic;
  AttackParams params;
  /// Modulation variance, for finite-V methods only.
  std::optional<double> modulation;
  /// Explicit sentinel for rates that diverge to -infinity; `value` is then unused.
  bool minus_infinity = false;
  double value = 0.0;

  /// `value`, or -infinity for the sentinel.
  double rate() const noexcept;
};

struct OneWayCoefficients {
  double b_V, e_V, b_1, e_1, phi, mu, theta;

  static OneWayCoefficients compute(const AttackParams& params, double modulation);
};

/// Two-way constants. The eigenvalue pairs f, h, m and the triple n are only known
/// through their products.
struct TwoWayCoefficients {
  double mu_prime, theta_prime, gamma, varsigma, upsilon;
  double f_product, h_product, m_product, n_product;

  static TwoWayCoefficients compute(const AttackParams& params, double modulation);
};

/// n1 n2 n3 = [1 + T^3 + (1-T)(1+T^2) W] W / (T (1+T)).
double het2_rr_eigenvalue_product(const AttackParams& params);

// Closed-form rates for V -> infinity. Each requires 0 < T < 1.

RateResult rate_dr_coll_het(const AttackParams& params);
/// Also the Hom rate: the individual and collective protocols coincide in DR.
RateResult rate_dr_hom(const AttackParams& params);
RateResult rate_dr_het(const AttackParams& params);
RateResult rate_rr_coll_het(const AttackParams& params);
RateResult rate_rr_hom(const AttackParams& params);
RateResult rate_rr_het(const AttackParams& params);
/// Also the Hom2 rate.
RateResult rate_dr_coll_hom2(const AttackParams& params);
RateResult rate_dr_coll_het2(const AttackParams& params);
RateResult rate_dr_het2(const AttackParams& params);
RateResult rate_rr_hom2(const AttackParams& params);
/// Uses the three finite eigenvalues of het2_rr_conditional_eigenvalues().
RateResult rate_rr_het2(const AttackParams& params);

/// Dispatches to the closed forms above; the divergent RR collective cases return the
/// sentinel.
RateResult asymptotic_rate(Protocol protocol, Reconciliation recon, const AttackParams& params);

/// The three finite symplectic eigenvalues of Eve's state conditioned on Bob's Het2
/// outcome, extrapolated to V -> infinity by Richardson over three large V
/// after discarding the one near (1-T^2) V. Throws
/// NumericError if their product misses het2_rr_eigenvalue_product() by more than 1e-6
/// (relative).
std::array<double, 3> het2_rr_conditional_eigenvalues(const AttackParams& params);

// ---- Exact finite-V engine ----

enum class Scheme { OneWay, TwoWay };

/// Which reduced state: Bob's modes, Eve's modes, or both (one-way only).
enum class Party { Bob, Eve, BobEve };

/// Classical data the state is conditioned on. QB is Bob's homodyne output (Hom or Hom2),
/// QBPB his heterodyne pair (Het or Het2).
enum class Conditioning { None, QA, QAPA, QB, QBPB };

/// Variances of a finite-V circuit. One-way: `total` is the signal variance V.
/// Two-way: `total` is Bob's EPR variance V. In both, Alice's classical modulations of
/// Q and P have variances `alice_q`, `alice_p`.
struct Modulation {
  double total = 1.0;
  double alice_q = 0.0;
  double alice_p = 0.0;

  /// alice_q = alice_p = V - 1 (identical resources).
  static Modulation identical(double total);
};

/// How Eve's modes are conditioned on Bob's outcomes in RR.
enum class RrConditioning {
  /// Schur complement on Bob's measured variables.
  General,
  /// Subtracting the fixed linear estimators that are optimal for V -> infinity.
  LinearEstimators,
};

struct ExactOptions {
  RrConditioning rr_conditioning = RrConditioning::General;
  /// Two-way only: Alice's classical modulation variance; defaults to V - 1.
  std::optional<double> alice_modulation;
};

/// Rate = alice_bob - eve, with alice_bob = I(X_A:X_B) or I(X_A:B) and eve = I(X_A:E),
/// I(X_B:E) or I(B:E) depending on the protocol and direction.
struct InformationTerms {
  double alice_bob = 0.0;
  double eve = 0.0;
};

InformationTerms exact_information_terms(Protocol protocol, Reconciliation recon, double modulation,
                                         const AttackParams& params,
                                         const ExactOptions& options = {});

/// Throws DomainError for V <= 1 or T outside (0, 1); returns the sentinel for the
/// divergent RR collective cases.
RateResult exact_rate(Protocol protocol, Reconciliation recon, double modulation,
                      const AttackParams& params, const ExactOptions& options = {});

/// Per-dimension statistics of Bob's decoded variable X_B for an individual protocol
/// (one entry for Hom/Hom2, two for Het/Het2).
struct OutputStatistics {
  std::vector<double> variance;
  std::vector<double> conditional_variance;  // given X_A
  double mutual_information = 0.0;           // I(X_A:X_B), active unit
};

OutputStatistics exact_output_statistics(Protocol protocol, double modulation,
                                         const AttackParams& params,
                                         std::optional<double> alice_modulation = std::nullopt);

/// Reduced (and possibly conditioned) state of a circuit.
/// BobEve is defined for the one-way scheme only; QB/QBPB for Bob's own modes are not.
CovarianceMatrix exact_cm(Scheme scheme, Party party, Conditioning conditioning,
                          const AttackParams& params, const Modulation& modulation);

/// Large-V spectrum of a state, evaluated at a given V. Eigenvalues known individually
/// are listed in `known`; those known only through a product are grouped.
struct AsymptoticSpectrum {
  struct ProductGroup {
    int count = 0;
    double product = 1.0;
  };
  std::vector<double> known;
  std::vector<ProductGroup> groups;

  std::size_t size() const noexcept;
};

/// Throws DomainError for combinations without a known asymptotic spectrum.
AsymptoticSpectrum asymptotic_spectra(Scheme scheme, Party party, Conditioning conditioning,
                                      const AttackParams& params, double modulation);

/// Largest relative error between a numeric spectrum and the asymptotic one: every known
/// value is matched greedily to its closest numeric eigenvalue, and each group's product
/// is compared with the product of the leftover eigenvalues in order.
double spectrum_mismatch(const SymplecticSpectrum& numeric, const AsymptoticSpectrum& oracle);

}  // namespace cvqkd
