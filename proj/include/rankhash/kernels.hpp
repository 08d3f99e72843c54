#pragma once

// Batch kernels. Each kernel has a serial reference and an OpenMP variant
// that must produce identical output; tests compare the two and bench/
// measures them against each other.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankhash/hash.hpp"
#include "rankhash/params.hpp"
#include "rankhash/permutation.hpp"

namespace rankhash::kernels {

enum class Exec { serial, parallel };

/// Hashes every template under one shared permutation set. Throws the same
/// errors as hash_template.
std::vector<HashedCode> hash_batch_serial(std::span<const FeatureVector> templates, const HashParams& params,
                                          const PermutationSet& perms);
std::vector<HashedCode> hash_batch_parallel(std::span<const FeatureVector> templates, const HashParams& params,
                                            const PermutationSet& perms);

std::vector<HashedCode> hash_batch(std::span<const FeatureVector> templates, const HashParams& params,
                                   const PermutationSet& perms, Exec exec = Exec::parallel);

struct IndexPair {
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
};

/// Collision counts for each (lhs, rhs) pair of codes. Codes must all have
/// the same length; fingerprints are not checked here.
std::vector<std::uint32_t> collisions_serial(std::span<const HashedCode> codes, std::span<const IndexPair> pairs);
std::vector<std::uint32_t> collisions_parallel(std::span<const HashedCode> codes, std::span<const IndexPair> pairs);

std::vector<std::uint32_t> collisions(std::span<const HashedCode> codes, std::span<const IndexPair> pairs,
                                      Exec exec = Exec::parallel);

/// Collision counts between codes_a[r] and codes_b[r] for every r.
std::vector<std::uint32_t> rowwise_collisions(std::span<const HashedCode> codes_a, std::span<const HashedCode> codes_b,
                                              Exec exec = Exec::parallel);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace rankhash::kernels
