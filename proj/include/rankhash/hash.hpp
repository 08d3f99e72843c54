#pragma once

// Rank hashing with a polynomial product kernel.
//
// Each of the m hash functions permutes the feature vector p times, multiplies
// the permuted copies element-wise and records the 1-based position of the
// largest product inside the first k positions. With p = 1 this is plain
// winner-takes-all hashing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankhash/params.hpp"
#include "rankhash/permutation.hpp"

namespace rankhash {

/// Protected template: m window indices, each in [1, k].
struct HashedCode {
  std::vector<std::uint32_t> indices;
  std::uint64_t params_fingerprint = 0;

  [[nodiscard]] std::size_t size() const noexcept { return indices.size(); }

  friend bool operator==(const HashedCode&, const HashedCode&) = default;
};

/// Window prefix of the Hadamard product of the p permuted copies.
struct ProductCode {
  std::vector<double> values;
};

/// values[j] = prod_l x[window_perms[l][j]] for j < k. Permutations are 0-based.
/// Throws DimensionError if a permutation is shorter than k or indexes past x,
/// ParameterError if k == 0 or no permutations are given.
[[nodiscard]] ProductCode product_code(std::span<const double> x,
                                       std::span<const std::span<const std::uint32_t>> window_perms, std::size_t k);

/// 1-based position of the maximum; the earliest maximum wins ties.
/// Throws ParameterError on an empty window.
[[nodiscard]] std::uint32_t windowed_argmax(std::span<const double> window);
[[nodiscard]] inline std::uint32_t windowed_argmax(const ProductCode& code) { return windowed_argmax(code.values); }

/// Index of hash function i, computed without materializing the product code.
[[nodiscard]] std::uint32_t hash_one(std::span<const double> x, const PermutationSet& perms, std::size_t i,
                                     std::size_t k) noexcept;

/// Serial reference hash of one template. Throws DimensionError if
/// x.size() != params.n or perms were derived from other params, DataError on
/// non-finite input.
[[nodiscard]] HashedCode hash_template(std::span<const double> x, const HashParams& params,
                                       const PermutationSet& perms);

/// Convenience overload that derives the permutations itself.
[[nodiscard]] HashedCode hash_template(std::span<const double> x, const HashParams& params);

/// Issues a replacement template under new_master_seed. Throws SeedReuseError
/// when the seed equals params.master_seed.
[[nodiscard]] HashedCode reissue(std::span<const double> x, const HashParams& params, std::uint64_t new_master_seed);

/// Per-position view of one hash function, for replay and attack tooling.
struct WindowTrace {
  std::vector<std::vector<std::uint32_t>> sources;  // sources[j][l], 0-based feature indices
  std::vector<double> products;
  std::uint32_t winner = 0;  // 1-based
};

[[nodiscard]] WindowTrace trace_hash_function(std::span<const double> x, const PermutationSet& perms, std::size_t i,
                                              std::size_t k);

}  // namespace rankhash
