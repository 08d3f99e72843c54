#include "rankhash/hash.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "rankhash/error.hpp"

namespace rankhash {

namespace {

// Multiplies x over the given source indices in ascending index order. Two
// window positions drawing the same multiset of features then produce the
// same bits, so mathematically tied products stay tied after rounding and
// after rescaling x. Sorts `idx` in place.
double ordered_product(std::span<const double> x, std::span<std::uint32_t> idx) noexcept {
  for (std::size_t a = 1; a < idx.size(); ++a) {
    const std::uint32_t v = idx[a];
    std::size_t b = a;
    for (; b > 0 && idx[b - 1] > v; --b) idx[b] = idx[b - 1];
    idx[b] = v;
  }
  double prod = x[idx[0]];
  for (std::size_t a = 1; a < idx.size(); ++a) prod *= x[idx[a]];
  return prod;
}

}  // namespace

ProductCode product_code(std::span<const double> x, std::span<const std::span<const std::uint32_t>> window_perms,
                         std::size_t k) {
  if (k == 0) throw ParameterError("empty window");
  if (window_perms.empty()) throw ParameterError("product code needs at least one permutation");
  for (const auto& perm : window_perms) {
    if (perm.size() < k) throw DimensionError("permutation shorter than the window");
    for (std::size_t j = 0; j < k; ++j) {
      if (perm[j] >= x.size()) throw DimensionError("permutation indexes past the feature vector");
    }
  }
  ProductCode code;
  code.values.resize(k);
  std::vector<std::uint32_t> idx(window_perms.size());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < idx.size(); ++l) idx[l] = window_perms[l][j];
    code.values[j] = ordered_product(x, idx);
  }
  return code;
}

std::uint32_t windowed_argmax(std::span<const double> window) {
  if (window.empty()) throw ParameterError("empty window");
  std::size_t best = 0;
  for (std::size_t j = 1; j < window.size(); ++j) {
    if (window[j] > window[best]) best = j;
  }
  return static_cast<std::uint32_t>(best + 1);
}

std::uint32_t hash_one(std::span<const double> x, const PermutationSet& perms, std::size_t i, std::size_t k) noexcept {
  const std::size_t p = perms.p();
  const std::uint32_t* first = perms.perm(i, 0).data();
  const std::size_t stride = perms.n();

  double best_value = 0.0;
  std::size_t best = 0;
  for (std::size_t j = 0; j < k; ++j) {
    double prod;
    if (p == 1) {
      prod = x[first[j]];
    } else if (p == 2) {
      // a * b == b * a exactly, so no ordering is needed
      prod = x[first[j]] * x[first[stride + j]];
    } else {
      const auto src = perms.sorted_sources(i, j);
      prod = x[src[0]];
      for (std::size_t l = 1; l < p; ++l) prod *= x[src[l]];
    }
    if (j == 0 || prod > best_value) {
      best_value = prod;
      best = j;
    }
  }
  return static_cast<std::uint32_t>(best + 1);
}

namespace {

void check_compatible(std::span<const double> x, const HashParams& params, const PermutationSet& perms) {
  params.validate();
  if (x.size() != params.n) {
    throw DimensionError("feature vector has " + std::to_string(x.size()) + " components, params expect " +
                         std::to_string(params.n));
  }
  if (perms.n() != params.n) throw DimensionError("permutation set built for a different n");
  if (perms.m() != params.m || perms.p() != params.p || perms.master_seed() != params.master_seed) {
    throw ParameterError("permutation set was derived from different params");
  }
  require_finite(x);
}

}  // namespace

HashedCode hash_template(std::span<const double> x, const HashParams& params, const PermutationSet& perms) {
  check_compatible(x, params, perms);
  HashedCode code;
  code.params_fingerprint = params.fingerprint();
  code.indices.resize(params.m);
  for (std::size_t i = 0; i < params.m; ++i) code.indices[i] = hash_one(x, perms, i, params.k);
  return code;
}

HashedCode hash_template(std::span<const double> x, const HashParams& params) {
  params.validate();
  return hash_template(x, params, PermutationSet(params));
}

HashedCode reissue(std::span<const double> x, const HashParams& params, std::uint64_t new_master_seed) {
  if (new_master_seed == params.master_seed) {
    throw SeedReuseError("reissue requires a seed different from the current master seed");
  }
  return hash_template(x, params.with_seed(new_master_seed));
}

WindowTrace trace_hash_function(std::span<const double> x, const PermutationSet& perms, std::size_t i, std::size_t k) {
  if (i >= perms.m()) throw ParameterError("hash function index out of range");
  if (k == 0 || k > perms.n()) throw ParameterError("window size out of range");
  if (x.size() != perms.n()) throw DimensionError("feature vector does not match permutation set");

  WindowTrace trace;
  trace.sources.resize(k);
  trace.products.resize(k);
  std::vector<std::uint32_t> idx(perms.p());
  for (std::size_t j = 0; j < k; ++j) {
    trace.sources[j].reserve(perms.p());
    for (std::size_t l = 0; l < perms.p(); ++l) {
      trace.sources[j].push_back(perms.perm(i, l)[j]);
      idx[l] = trace.sources[j].back();
    }
    trace.products[j] = ordered_product(x, idx);
  }
  trace.winner = windowed_argmax(trace.products);
  return trace;
}

}  // namespace rankhash
