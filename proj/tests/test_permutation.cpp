#include <gtest/gtest.h>

#include <algorithm>

#include "rankhash/error.hpp"
#include "rankhash/permutation.hpp"
#include "rankhash/rng.hpp"

using namespace rankhash;

TEST(Permutation, DeterministicForSameSeed) {
  const HashParams params{3, 1, 2, 1, 12345};
  EXPECT_EQ(derive_permutations(params), derive_permutations(params));
}

TEST(Permutation, EveryEntryIsABijection) {
  const HashParams params{5, 2, 3, 2, 777};
  const auto perms = derive_permutations(params);
  ASSERT_EQ(perms.m(), 2u);
  ASSERT_EQ(perms.p(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t l = 0; l < 2; ++l) EXPECT_TRUE(is_permutation_of_iota(perms.perm(i, l)));
  }
}

TEST(Permutation, DifferentSeedsDifferAcrossHundredPairs) {
  SplitMix64 rng(99);
  int differing = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto s1 = rng.next();
    auto s2 = rng.next();
    if (s2 == s1) ++s2;
    if (!(derive_permutations({5, 2, 3, 2, s1}) == derive_permutations({5, 2, 3, 2, s2}))) ++differing;
  }
  // 4 permutations of 5 elements; all equal by chance has probability 120^-4.
  EXPECT_EQ(differing, 100);
}

TEST(Permutation, SinglePermutationRegeneratesInIsolation) {
  const HashParams params{40, 7, 10, 3, 0xfeedULL};
  const auto perms = derive_permutations(params);
  for (std::size_t i = 0; i < params.m; ++i) {
    for (std::size_t l = 0; l < params.p; ++l) {
      const auto single = PermutationSet::regenerate(params.master_seed, params.n, i, l);
      EXPECT_TRUE(std::equal(single.begin(), single.end(), perms.perm(i, l).begin()));
    }
  }
}

TEST(Permutation, PrefixShuffleAgreesWithFullShuffle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto full = make_permutation(seed, 30);
    std::vector<std::uint32_t> partial(30);
    shuffle_indices(seed, partial, 7);
    EXPECT_TRUE(std::equal(full.begin(), full.begin() + 7, partial.begin()));
  }
}

TEST(Permutation, GoldenValuesFromIndependentOracle) {
  // tests/oracles/hash_oracle.py
  const std::vector<std::uint32_t> first{7, 1, 4, 5, 0, 2, 6, 9, 3, 8};
  const std::vector<std::uint32_t> later{3, 1, 0, 5, 7, 9, 2, 8, 6, 4};
  EXPECT_EQ(PermutationSet::regenerate(42, 10, 0, 0), first);
  EXPECT_EQ(PermutationSet::regenerate(42, 10, 3, 1), later);
}

TEST(Permutation, InvalidParamsThrow) {
  EXPECT_THROW(derive_permutations({0, 1, 2, 1, 0}), ParameterError);
  EXPECT_THROW(derive_permutations({5, 1, 1, 1, 0}), ParameterError);
  EXPECT_THROW(derive_permutations({5, 1, 6, 1, 0}), ParameterError);
  EXPECT_THROW(derive_permutations({5, 0, 3, 1, 0}), ParameterError);
  EXPECT_THROW(derive_permutations({5, 1, 3, 0, 0}), ParameterError);
  EXPECT_NO_THROW(derive_permutations({5, 1, 5, 1, 0}));  // k == n admitted
}

TEST(Permutation, FromArraysRejectsNonBijection) {
  EXPECT_THROW(PermutationSet::from_arrays(3, 1, 1, 0, {0, 0, 1}), ParameterError);
  EXPECT_THROW(PermutationSet::from_arrays(3, 1, 1, 0, {0, 1}), ParameterError);
  EXPECT_NO_THROW(PermutationSet::from_arrays(3, 1, 1, 0, {2, 0, 1}));
}

TEST(Rng, BoundedStaysInRangeAndCoversIt) {
  SplitMix64 rng(5);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.bounded(7);
    ASSERT_LT(v, 7u);
    ++seen[v];
  }
  for (const int c : seen) EXPECT_GT(c, 800);
}

TEST(PermutationSet, SortedSourcesAreTheColumnInAscendingOrder) {
  const HashParams params{9, 4, 4, 3, 77};
  const PermutationSet set(params);
  for (std::size_t i = 0; i < params.m; ++i) {
    for (std::size_t j = 0; j < params.n; ++j) {
      std::vector<std::uint32_t> column;
      for (std::size_t l = 0; l < params.p; ++l) column.push_back(set.perm(i, l)[j]);
      std::sort(column.begin(), column.end());
      const auto sorted = set.sorted_sources(i, j);
      EXPECT_EQ(std::vector<std::uint32_t>(sorted.begin(), sorted.end()), column);
    }
  }
  const auto explicit_set = PermutationSet::from_arrays(3, 1, 3, 0, {2, 0, 1, 1, 2, 0, 0, 1, 2});
  const auto s0 = explicit_set.sorted_sources(0, 0);
  EXPECT_EQ(std::vector<std::uint32_t>(s0.begin(), s0.end()), (std::vector<std::uint32_t>{0, 1, 2}));
}
