#pragma once

// Reproducible random streams. Every Monte-Carlo sample draws from its own SplitMix64
// generator keyed by (seed, sample index), so results do not depend on how samples are
// distributed over threads.

#include <cstdint>
#include <limits>

namespace cvqkd {

/// SplitMix64 (Steele, Lea, Flood): a 64-bit Weyl sequence passed through a
/// bijective mixer. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// The SplitMix64 output function.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

 private:
  std::uint64_t state_;
};

/// Generator for sample `index` of a run seeded with `seed`.
SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace cvqkd
