#include "rankhash/kernels.hpp"

#include <string>

#include "rankhash/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankhash::kernels {

namespace {

void check_batch(std::span<const FeatureVector> templates, const HashParams& params, const PermutationSet& perms) {
  params.validate();
  if (perms.n() != params.n) throw DimensionError("permutation set built for a different n");
  if (perms.m() != params.m || perms.p() != params.p || perms.master_seed() != params.master_seed) {
    throw ParameterError("permutation set was derived from different params");
  }
  for (std::size_t t = 0; t < templates.size(); ++t) {
    if (templates[t].size() != params.n) {
      throw DimensionError("template " + std::to_string(t) + " has " + std::to_string(templates[t].size()) +
                           " components, params expect " + std::to_string(params.n));
    }
    require_finite(templates[t].view());
  }
}

std::vector<HashedCode> allocate(std::size_t count, const HashParams& params) {
  std::vector<HashedCode> codes(count);
  const auto fp = params.fingerprint();
  for (auto& c : codes) {
    c.params_fingerprint = fp;
    c.indices.resize(params.m);
  }
  return codes;
}

}  // namespace

std::vector<HashedCode> hash_batch_serial(std::span<const FeatureVector> templates, const HashParams& params,
                                          const PermutationSet& perms) {
  check_batch(templates, params, perms);
  auto codes = allocate(templates.size(), params);
  for (std::size_t t = 0; t < templates.size(); ++t) {
    const auto x = templates[t].view();
    for (std::size_t i = 0; i < params.m; ++i) codes[t].indices[i] = hash_one(x, perms, i, params.k);
  }
  return codes;
}

std::vector<HashedCode> hash_batch_parallel(std::span<const FeatureVector> templates, const HashParams& params,
                                            const PermutationSet& perms) {
  check_batch(templates, params, perms);
  auto codes = allocate(templates.size(), params);
  const auto count = static_cast<std::int64_t>(templates.size() * params.m);
  const auto m = static_cast<std::int64_t>(params.m);
#pragma omp parallel for schedule(static)
  for (std::int64_t w = 0; w < count; ++w) {
    const auto t = static_cast<std::size_t>(w / m);
    const auto i = static_cast<std::size_t>(w % m);
    codes[t].indices[i] = hash_one(templates[t].view(), perms, i, params.k);
  }
  return codes;
}

std::vector<HashedCode> hash_batch(std::span<const FeatureVector> templates, const HashParams& params,
                                   const PermutationSet& perms, Exec exec) {
  return exec == Exec::serial ? hash_batch_serial(templates, params, perms)
                              : hash_batch_parallel(templates, params, perms);
}

namespace {

std::uint32_t count_equal(const HashedCode& a, const HashedCode& b) noexcept {
  std::uint32_t c = 0;
  const std::size_t m = a.indices.size();
  for (std::size_t i = 0; i < m; ++i) c += a.indices[i] == b.indices[i] ? 1U : 0U;
  return c;
}

void check_pairs(std::span<const HashedCode> codes, std::span<const IndexPair> pairs) {
  for (const auto& c : codes) {
    if (c.size() != codes.front().size()) throw IncompatibleTemplateError("codes differ in length");
  }
  for (const auto& pr : pairs) {
    if (pr.lhs >= codes.size() || pr.rhs >= codes.size()) throw ParameterError("pair index out of range");
  }
}

}  // namespace

std::vector<std::uint32_t> collisions_serial(std::span<const HashedCode> codes, std::span<const IndexPair> pairs) {
  check_pairs(codes, pairs);
  std::vector<std::uint32_t> out(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) out[r] = count_equal(codes[pairs[r].lhs], codes[pairs[r].rhs]);
  return out;
}

std::vector<std::uint32_t> collisions_parallel(std::span<const HashedCode> codes, std::span<const IndexPair> pairs) {
  check_pairs(codes, pairs);
  std::vector<std::uint32_t> out(pairs.size());
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto& pr = pairs[static_cast<std::size_t>(r)];
    out[static_cast<std::size_t>(r)] = count_equal(codes[pr.lhs], codes[pr.rhs]);
  }
  return out;
}

std::vector<std::uint32_t> collisions(std::span<const HashedCode> codes, std::span<const IndexPair> pairs, Exec exec) {
  return exec == Exec::serial ? collisions_serial(codes, pairs) : collisions_parallel(codes, pairs);
}

std::vector<std::uint32_t> rowwise_collisions(std::span<const HashedCode> codes_a, std::span<const HashedCode> codes_b,
                                              Exec exec) {
  if (codes_a.size() != codes_b.size()) throw DimensionError("row counts differ");
  std::vector<std::uint32_t> out(codes_a.size());
  for (std::size_t r = 0; r < codes_a.size(); ++r) {
    if (codes_a[r].size() != codes_b[r].size()) throw IncompatibleTemplateError("codes differ in length");
  }
  const auto count = static_cast<std::int64_t>(codes_a.size());
  if (exec == Exec::serial) {
    for (std::int64_t r = 0; r < count; ++r) {
      out[static_cast<std::size_t>(r)] = count_equal(codes_a[static_cast<std::size_t>(r)], codes_b[static_cast<std::size_t>(r)]);
    }
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < count; ++r) {
    out[static_cast<std::size_t>(r)] = count_equal(codes_a[static_cast<std::size_t>(r)], codes_b[static_cast<std::size_t>(r)]);
  }
  return out;
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rankhash::kernels
