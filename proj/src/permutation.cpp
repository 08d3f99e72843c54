#include "rankhash/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "rankhash/error.hpp"
#include "rankhash/rng.hpp"

namespace rankhash {

std::uint64_t permutation_seed(std::uint64_t master_seed, std::size_t i, std::size_t l) noexcept {
  const std::uint64_t counter = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(l);
  return derive_seed(master_seed, counter);
}

void shuffle_indices(std::uint64_t seed, std::span<std::uint32_t> out, std::size_t prefix) {
  const std::size_t n = out.size();
  std::iota(out.begin(), out.end(), std::uint32_t{0});
  if (n < 2) return;
  SplitMix64 rng(seed);
  const std::size_t stop = std::min(prefix, n - 1);
  for (std::size_t j = 0; j < stop; ++j) {
    const auto r = j + static_cast<std::size_t>(rng.bounded(n - j));
    std::swap(out[j], out[r]);
  }
}

std::vector<std::uint32_t> make_permutation(std::uint64_t seed, std::size_t n) {
  std::vector<std::uint32_t> out(n);
  shuffle_indices(seed, out, n);
  return out;
}

PermutationSet::PermutationSet(const HashParams& params)
    : n_(params.n), m_(params.m), p_(params.p), master_seed_(params.master_seed) {
  params.validate();
  data_.resize(m_ * p_ * n_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t l = 0; l < p_; ++l) {
      std::span<std::uint32_t> slot(data_.data() + (i * p_ + l) * n_, n_);
      shuffle_indices(permutation_seed(master_seed_, i, l), slot, n_);
    }
  }
  build_sorted_sources();
}

void PermutationSet::build_sorted_sources() {
  if (p_ < 3) return;
  sorted_.resize(m_ * n_ * p_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      auto* out = sorted_.data() + (i * n_ + j) * p_;
      for (std::size_t l = 0; l < p_; ++l) out[l] = data_[(i * p_ + l) * n_ + j];
      std::sort(out, out + p_);
    }
  }
}

std::vector<std::uint32_t> PermutationSet::regenerate(std::uint64_t master_seed, std::size_t n, std::size_t i,
                                                      std::size_t l) {
  return make_permutation(permutation_seed(master_seed, i, l), n);
}

PermutationSet PermutationSet::from_arrays(std::size_t n, std::size_t m, std::size_t p, std::uint64_t master_seed,
                                           std::vector<std::uint32_t> data) {
  if (data.size() != n * m * p) throw ParameterError("permutation data has the wrong size");
  PermutationSet out;
  out.n_ = n;
  out.m_ = m;
  out.p_ = p;
  out.master_seed_ = master_seed;
  out.data_ = std::move(data);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < p; ++l) {
      if (!is_permutation_of_iota(out.perm(i, l))) throw ParameterError("entry is not a permutation");
    }
  }
  out.build_sorted_sources();
  return out;
}

bool is_permutation_of_iota(std::span<const std::uint32_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (auto v : perm) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace rankhash
