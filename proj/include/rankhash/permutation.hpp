#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankhash/params.hpp"

namespace rankhash {

/// Sub-seed of the l-th permutation of hash function i (both 0-based).
[[nodiscard]] std::uint64_t permutation_seed(std::uint64_t master_seed, std::size_t i, std::size_t l) noexcept;

/// Forward Fisher-Yates shuffle of {0, ..., n-1} driven by SplitMix64(seed).
/// Only the first `prefix` positions are finalized when prefix < n; those
/// positions agree with the full shuffle, so callers that only need a window
/// can stop early.
void shuffle_indices(std::uint64_t seed, std::span<std::uint32_t> out, std::size_t prefix);

[[nodiscard]] std::vector<std::uint32_t> make_permutation(std::uint64_t seed, std::size_t n);

/// The m x p permutations of one HashParams. Entries are 0-based source
/// indices: perm(i, l)[j] is the original feature feeding window position j
/// of the l-th permuted copy for hash function i.
class PermutationSet {
 public:
  PermutationSet() = default;

  /// Throws ParameterError for invalid params.
  explicit PermutationSet(const HashParams& params);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t m() const noexcept { return m_; }
  [[nodiscard]] std::size_t p() const noexcept { return p_; }
  [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }

  [[nodiscard]] std::span<const std::uint32_t> perm(std::size_t i, std::size_t l) const noexcept {
    return {data_.data() + (i * p_ + l) * n_, n_};
  }

  /// Sources feeding window position j of hash function i, in ascending
  /// order. Only available for p >= 3; below that the multiplication order
  /// cannot change the rounded product.
  [[nodiscard]] std::span<const std::uint32_t> sorted_sources(std::size_t i, std::size_t j) const noexcept {
    return {sorted_.data() + (i * n_ + j) * p_, p_};
  }

  /// Regenerates one permutation without touching the others.
  [[nodiscard]] static std::vector<std::uint32_t> regenerate(std::uint64_t master_seed, std::size_t n, std::size_t i,
                                                             std::size_t l);

  /// Wraps explicit permutations laid out as [i][l][j]. Throws
  /// ParameterError if the size is wrong or an entry is not a bijection.
  [[nodiscard]] static PermutationSet from_arrays(std::size_t n, std::size_t m, std::size_t p, std::uint64_t master_seed,
                                                  std::vector<std::uint32_t> data);

  friend bool operator==(const PermutationSet&, const PermutationSet&) = default;

 private:
  void build_sorted_sources();

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t p_ = 0;
  std::uint64_t master_seed_ = 0;
  std::vector<std::uint32_t> data_;
  std::vector<std::uint32_t> sorted_;  // [i][j][l], filled when p >= 3
};

[[nodiscard]] inline PermutationSet derive_permutations(const HashParams& params) { return PermutationSet(params); }

[[nodiscard]] bool is_permutation_of_iota(std::span<const std::uint32_t> perm);

}  // namespace rankhash
