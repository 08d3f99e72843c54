#pragma once

// Portable, fully specified random streams. Nothing here depends on the
// standard library's implementation-defined distributions, so every stream
// is bit-identical across compilers and platforms.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rankhash {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Combines a seed with a stream counter into an independent sub-seed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix64(seed ^ mix64(counter + kGoldenGamma));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Unbiased integer in [0, range) (Lemire's multiply-and-reject). range > 0.
  constexpr std::uint64_t bounded(std::uint64_t range) noexcept {
    uint128 prod = static_cast<uint128>(next()) * range;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        prod = static_cast<uint128>(next()) * range;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace rankhash
