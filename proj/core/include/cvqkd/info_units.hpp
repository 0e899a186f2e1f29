#pragma once

#include <string_view>

namespace cvqkd {

/// Unit of every entropy and rate the library reports.
enum class LogBase { Bits, Nats };

/// Process-wide unit switch. Defaults to bits.
void set_log_base(LogBase base) noexcept;
LogBase log_base() noexcept;

/// Logarithm in the active unit (log2 for bits, ln for nats).
double info_log(double x) noexcept;

/// Converts a value expressed in bits into the active unit.
double from_bits(double bits) noexcept;

std::string_view to_string(LogBase base) noexcept;

/// RAII override of the unit, restoring the previous one on scope exit.
class ScopedLogBase {
 public:
  explicit ScopedLogBase(LogBase base) noexcept : previous_(log_base()) { set_log_base(base); }
  ~ScopedLogBase() { set_log_base(previous_); }
  ScopedLogBase(const ScopedLogBase&) = delete;
  ScopedLogBase& operator=(const ScopedLogBase&) = delete;

 private:
  LogBase previous_;
};

}  // namespace cvqkd
