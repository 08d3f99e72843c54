#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rankhash {

/// A real-valued template of fixed dimension, optionally labelled.
struct FeatureVector {
  std::vector<double> values;
  std::string subject_id;
  std::string sample_id;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] std::span<const double> view() const noexcept { return values; }
};

/// Throws DataError if any value is NaN or infinite.
void require_finite(std::span<const double> values);

/// Everything that determines the transform: feature dimension n, number of
/// hash functions m, window size k, polynomial degree p and the master seed.
struct HashParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t p = 1;
  std::uint64_t master_seed = 0;

  /// Throws ParameterError unless n > 0, m > 0, 1 < k <= n and p >= 1.
  void validate() const;

  /// k == n is admitted as the degenerate global-argmax case.
  [[nodiscard]] bool full_window() const noexcept { return k == n; }

  [[nodiscard]] HashParams with_seed(std::uint64_t seed) const noexcept {
    HashParams out = *this;
    out.master_seed = seed;
    return out;
  }

  /// 64-bit digest of (n, m, k, p, master_seed) binding codes to their params.
  [[nodiscard]] std::uint64_t fingerprint() const noexcept;

  friend bool operator==(const HashParams&, const HashParams&) = default;
};

/// Lower-case 16 digit hex rendering used for fingerprints on the wire.
std::string to_hex(std::uint64_t value);
std::uint64_t from_hex(const std::string& text);

}  // namespace rankhash
