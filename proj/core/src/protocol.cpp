#include "cvqkd/protocol.hpp"

#include <utility>

namespace cvqkd {

namespace {

constexpr std::pair<Protocol, std::string_view> kProtocolNames[] = {
    {Protocol::Hom, "hom"},           {Protocol::Het, "het"},
    {Protocol::CollHom, "coll_hom"},  {Protocol::CollHet, "coll_het"},
    {Protocol::Hom2, "hom2"},         {Protocol::Het2, "het2"},
    {Protocol::CollHom2, "coll_hom2"}, {Protocol::CollHet2, "coll_het2"},
};

}  // namespace

std::string_view to_string(Protocol protocol) noexcept {
  for (const auto& [p, name] : kProtocolNames) {
    if (p == protocol) return name;
  }
  return "unknown";
}

std::string_view to_string(Reconciliation recon) noexcept {
  return recon == Reconciliation::DR ? "dr" : "rr";
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Asymptotic: return "asymptotic";
    case Method::ExactFiniteV: return "exact";
    case Method::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view text) noexcept {
  for (const auto& [p, name] : kProtocolNames) {
    if (name == text) return p;
  }
  return std::nullopt;
}

std::optional<Reconciliation> parse_reconciliation(std::string_view text) noexcept {
  if (text == "dr") return Reconciliation::DR;
  if (text == "rr") return Reconciliation::RR;
  return std::nullopt;
}

Protocol one_way_counterpart(Protocol p) noexcept {
  switch (p) {
    case Protocol::Hom2: return Protocol::Hom;
    case Protocol::Het2: return Protocol::Het;
    case Protocol::CollHom2: return Protocol::CollHom;
    case Protocol::CollHet2: return Protocol::CollHet;
    default: return p;
  }
}

std::optional<std::string_view> divergence_reason(Protocol p, Reconciliation r) noexcept {
  if (r != Reconciliation::RR) return std::nullopt;
  switch (p) {
    case Protocol::CollHom:
    case Protocol::CollHom2:
    case Protocol::CollHet2:
      return "RR rate of this collective protocol diverges to -infinity: the quantum mutual "
             "information I(B:E) provides too large a bound";
    default: return std::nullopt;
  }
}

}  // namespace cvqkd
