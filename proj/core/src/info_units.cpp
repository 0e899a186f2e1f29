#include "cvqkd/info_units.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace cvqkd {

namespace {
std::atomic<LogBase> g_log_base{LogBase::Bits};
}

void set_log_base(LogBase base) noexcept { g_log_base.store(base, std::memory_order_relaxed); }

LogBase log_base() noexcept { return g_log_base.load(std::memory_order_relaxed); }

double info_log(double x) noexcept {
  return log_base() == LogBase::Bits ? std::log2(x) : std::log(x);
}

double from_bits(double bits) noexcept {
  return log_base() == LogBase::Bits ? bits : bits * std::numbers::ln2;
}

std::string_view to_string(LogBase base) noexcept {
  return base == LogBase::Bits ? "bits" : "nats";
}

}  // namespace cvqkd
