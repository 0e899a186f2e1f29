#include "cvqkd/rng.hpp"

namespace cvqkd {

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) noexcept {
  // Hash the pair so neighbouring indices (and seeds) start far apart on the Weyl sequence.
  const std::uint64_t key = SplitMix64::mix(seed + SplitMix64::kGamma) ^
                            SplitMix64::mix(index * SplitMix64::kGamma + 0x632be59bd9b4e019ULL);
  return SplitMix64(SplitMix64::mix(key));
}

}  // namespace cvqkd
