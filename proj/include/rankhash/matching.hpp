#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankhash/hash.hpp"

namespace rankhash {

struct MatchScore {
  std::size_t collisions = 0;
  std::size_t m = 0;
  double score = 0.0;  // collisions / m
};

enum class CrossParams { reject, allow };

/// Counts positions where both codes hold the same index. Throws
/// IncompatibleTemplateError on a length mismatch, or on a fingerprint
/// mismatch unless cross == CrossParams::allow.
[[nodiscard]] MatchScore collision_score(const HashedCode& enrolled, const HashedCode& query,
                                         CrossParams cross = CrossParams::reject);

/// Pairwise-order agreement. per_index[i] is the number of j with
/// a[i] > a[j] and b[i] > b[j]; total sums them, i.e. the number of index
/// pairs whose strict order both vectors agree on. Ties count as disagreement.
struct RankAgreement {
  std::vector<std::size_t> per_index;
  std::size_t total = 0;
};

/// Throws DimensionError on length mismatch and ParameterError if n < 2.
[[nodiscard]] RankAgreement pairwise_order(std::span<const double> a, std::span<const double> b);

/// Probability that one window-k winner-takes-all hash (p = 1, uniformly
/// random permutation) collides for a and b:
///     sum_i C(R_i, k-1) / C(n, k).
/// Exact for tie-free inputs; ties make it a lower bound. Not valid for p >= 2.
/// Throws ParameterError unless 2 <= k <= n, DimensionError on length mismatch.
[[nodiscard]] double collision_probability(std::span<const double> a, std::span<const double> b, std::size_t k);

/// C(r, k-1) / C(n, k) evaluated as a product of ratios (no overflow).
[[nodiscard]] long double binomial_ratio(std::size_t r, std::size_t n, std::size_t k) noexcept;

}  // namespace rankhash
