#pragma once

// Front end of the cvqkd tool: flag parsing into a Command and its execution.

#include "cvqkd/info_units.hpp"
#include "cvqkd/protocol.hpp"
#include "cvqkd/thresholds.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cvqkd::cli {

enum ExitCode : int { kOk = 0, kFlagError = 2, kNumericError = 3, kIoError = 4 };

enum class CommandKind { Rate, Threshold, Sweep, FigureBundle, Simulate, TomoCheck };

struct Command {
  CommandKind kind = CommandKind::Rate;
  Protocol protocol = Protocol::Hom;
  Reconciliation recon = Reconciliation::DR;
  Method method = Method::Asymptotic;
  LogBase log_base = LogBase::Bits;

  double transmission = 0.5;
  std::optional<double> eve_variance;  // --W
  std::optional<double> excess_noise;  // --N
  double modulation = 1e6;             // --V
  TGrid grid;
  std::uint64_t samples = 100000;      // --n
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::optional<std::filesystem::path> out;

  // simulate
  std::optional<std::filesystem::path> dump;
  // tomo-check
  double correlation = 0.0;
  std::optional<double> backward_transmission;
  std::optional<std::filesystem::path> forward_csv, backward_csv, round_trip_csv;
  std::optional<double> tolerance;
};

/// Parses argv (without executing). Throws cvqkd::DomainError with a one-line message on
/// bad flags; prints help to `out` and returns nullopt for --help.
std::optional<Command> parse(int argc, const char* const* argv, std::ostream& out);

/// Executes a parsed command, writing its CSV / key=value output to `out` (or to
/// command.out). Library errors propagate as exceptions.
void run(const Command& command, std::ostream& out);

/// parse + run, mapping errors to exit codes and a single line on `err`:
///   error=<kind> exit=<code> message=<text>
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvqkd::cli
