#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace cvqkd {

/// One-way (Hom, Het), two-way (Hom2, Het2) and their collective variants, where Bob
/// stores every mode and performs an optimal coherent measurement.
enum class Protocol { Hom, Het, CollHom, CollHet, Hom2, Het2, CollHom2, CollHet2 };

enum class Reconciliation { DR, RR };

enum class Method { Asymptotic, ExactFiniteV, MonteCarlo };

inline constexpr std::array<Protocol, 8> kAllProtocols = {
    Protocol::Hom,  Protocol::Het,  Protocol::CollHom,  Protocol::CollHet,
    Protocol::Hom2, Protocol::Het2, Protocol::CollHom2, Protocol::CollHet2};

inline constexpr std::array<Reconciliation, 2> kAllReconciliations = {Reconciliation::DR,
                                                                      Reconciliation::RR};

/// CLI spelling: hom, het, coll_hom, coll_het, hom2, het2, coll_hom2, coll_het2.
std::string_view to_string(Protocol protocol) noexcept;
std::string_view to_string(Reconciliation recon) noexcept;
std::string_view to_string(Method method) noexcept;

std::optional<Protocol> parse_protocol(std::string_view text) noexcept;
std::optional<Reconciliation> parse_reconciliation(std::string_view text) noexcept;

constexpr bool is_two_way(Protocol p) noexcept {
  return p == Protocol::Hom2 || p == Protocol::Het2 || p == Protocol::CollHom2 ||
         p == Protocol::CollHet2;
}

constexpr bool is_collective(Protocol p) noexcept {
  return p == Protocol::CollHom || p == Protocol::CollHet || p == Protocol::CollHom2 ||
         p == Protocol::CollHet2;
}

/// Joint decoding of both quadratures (X = {Q, P}) as opposed to a single quadrature.
constexpr bool is_joint(Protocol p) noexcept {
  return p == Protocol::Het || p == Protocol::CollHet || p == Protocol::Het2 ||
         p == Protocol::CollHet2;
}

/// The one-way protocol a two-way protocol extends (Hom2 -> Hom, CollHet2 -> CollHet);
/// identity for one-way protocols.
Protocol one_way_counterpart(Protocol p) noexcept;

/// Reason string when the (protocol, reconciliation) rate diverges to -infinity, i.e. the
/// collective protocols in RR other than CollHet. Empty optional when the rate is finite.
std::optional<std::string_view> divergence_reason(Protocol p, Reconciliation r) noexcept;

}  // namespace cvqkd
