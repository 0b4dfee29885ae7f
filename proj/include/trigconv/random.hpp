#pragma once

#include <cstdint>

namespace trigconv {

/// Counter-based SplitMix64 (Steele, Lea & Flood 2014, the `splitmix64`
/// finaliser). Stream element i of seed s is mix(s + (i + 1) * golden).
/// Random access by index keeps generator families pure functions of n.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t at(std::uint64_t index) const noexcept {
    return mix(seed_ + (index + 1) * kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
  }

  /// Independent sub-stream, e.g. one per sequence index and purpose.
  constexpr SplitMix64 fork(std::uint64_t tag) const noexcept { return SplitMix64(mix(seed_ ^ mix(tag + kGolden))); }

 private:
  std::uint64_t seed_;
};

}  // namespace trigconv
