// Serial reference vs OpenMP kernels on the evaluation workload: 500 vectors
// of length 299, FVC-sized pair lists. Thread count comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "rankhash/dataset.hpp"
#include "rankhash/kernels.hpp"
#include "rankhash/permutation.hpp"

using namespace rankhash;

namespace {

const std::vector<FeatureVector>& vectors() {
  static const auto v = synthesize_dataset(calibrated_spec(99)).flatten();
  return v;
}

HashParams params_for(const benchmark::State& state) {
  return {299, static_cast<std::size_t>(state.range(0)), 128, static_cast<std::size_t>(state.range(1)), 7};
}

template <kernels::Exec exec>
void BM_HashBatch(benchmark::State& state) {
  const auto params = params_for(state);
  const auto perms = derive_permutations(params);
  for (auto _ : state) {
    auto codes = kernels::hash_batch(vectors(), params, perms, exec);
    benchmark::DoNotOptimize(codes.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vectors().size() * params.m));
  state.counters["threads"] = kernels::max_threads();
}

template <kernels::Exec exec>
void BM_AllPairCollisions(benchmark::State& state) {
  const HashParams params{299, static_cast<std::size_t>(state.range(0)), 128, 2, 7};
  const auto codes = kernels::hash_batch(vectors(), params, derive_permutations(params));
  std::vector<kernels::IndexPair> pairs;
  for (std::uint32_t a = 0; a < codes.size(); ++a) {
    for (std::uint32_t b = a + 1; b < codes.size(); ++b) pairs.push_back({a, b});
  }
  for (auto _ : state) {
    auto hits = kernels::collisions(codes, pairs, exec);
    benchmark::DoNotOptimize(hits.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}

}  // namespace

BENCHMARK(BM_HashBatch<kernels::Exec::serial>)->Args({600, 2})->Args({600, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HashBatch<kernels::Exec::parallel>)->Args({600, 2})->Args({600, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairCollisions<kernels::Exec::serial>)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairCollisions<kernels::Exec::parallel>)->Arg(600)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
