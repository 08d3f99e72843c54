#include "rankhash/matching.hpp"

#include <string>

#include "rankhash/error.hpp"

namespace rankhash {

MatchScore collision_score(const HashedCode& enrolled, const HashedCode& query, CrossParams cross) {
  if (enrolled.size() != query.size()) {
    throw IncompatibleTemplateError("code lengths differ: " + std::to_string(enrolled.size()) + " vs " +
                                    std::to_string(query.size()));
  }
  if (enrolled.size() == 0) throw IncompatibleTemplateError("empty codes");
  if (cross == CrossParams::reject && enrolled.params_fingerprint != query.params_fingerprint) {
    throw IncompatibleTemplateError("codes were produced under different params or seeds (" +
                                    to_hex(enrolled.params_fingerprint) + " vs " + to_hex(query.params_fingerprint) +
                                    ")");
  }
  MatchScore out;
  out.m = enrolled.size();
  for (std::size_t i = 0; i < out.m; ++i) {
    if (enrolled.indices[i] == query.indices[i]) ++out.collisions;
  }
  out.score = static_cast<double>(out.collisions) / static_cast<double>(out.m);
  return out;
}

RankAgreement pairwise_order(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("pairwise order needs equal lengths");
  if (a.size() < 2) throw ParameterError("pairwise order needs at least two components");
  const std::size_t n = a.size();
  RankAgreement out;
  out.per_index.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i] > a[j] && b[i] > b[j]) ++r;
    }
    out.per_index[i] = r;
    out.total += r;
  }
  return out;
}

long double binomial_ratio(std::size_t r, std::size_t n, std::size_t k) noexcept {
  if (k == 0 || k > n || r + 1 < k) return 0.0L;
  long double acc = static_cast<long double>(k) / static_cast<long double>(n - k + 1);
  for (std::size_t t = 0; t + 1 < k; ++t) {
    acc *= static_cast<long double>(r - t) / static_cast<long double>(n - t);
    if (acc == 0.0L) break;
  }
  return acc;
}

double collision_probability(std::span<const double> a, std::span<const double> b, std::size_t k) {
  if (a.size() != b.size()) throw DimensionError("collision probability needs equal lengths");
  const std::size_t n = a.size();
  if (k < 2 || k > n) {
    throw ParameterError("window size k=" + std::to_string(k) + " must satisfy 2 <= k <= n=" + std::to_string(n));
  }
  const auto agreement = pairwise_order(a, b);
  long double sum = 0.0L;
  for (const auto r : agreement.per_index) sum += binomial_ratio(r, n, k);
  return static_cast<double>(sum);
}

}  // namespace rankhash
