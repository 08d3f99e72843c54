#include "rankhash/security.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

#include "rankhash/error.hpp"
#include "rankhash/rng.hpp"

namespace rankhash {

FeatureStats feature_stats(std::span<const FeatureVector> vectors, double delta) {
  if (!(delta > 0.0)) throw ParameterError("precision step must be positive");
  if (vectors.empty() || vectors.front().size() == 0) throw DataError("feature stats need at least one vector");
  FeatureStats stats;
  stats.delta = delta;
  stats.n = vectors.front().size();
  double lo = vectors.front().values.front();
  double hi = lo;
  for (const auto& v : vectors) {
    if (v.size() != stats.n) throw DimensionError("vectors differ in dimension");
    for (const double x : v.values) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  stats.min = std::floor(lo / delta + 1e-9) * delta;
  stats.max = std::ceil(hi / delta - 1e-9) * delta;
  return stats;
}

ComplexityReport brute_force_complexity(const FeatureStats& stats) {
  if (!(stats.delta > 0.0)) throw ParameterError("precision step must be positive");
  if (!(stats.min < stats.max)) throw ParameterError("feature range must satisfy min < max");
  if (stats.n == 0) throw ParameterError("feature dimension must be positive");

  ComplexityReport r;
  const double steps = std::round((stats.max - stats.min) / stats.delta);
  r.possibilities_single = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(steps));
  r.bits_single = std::log2(static_cast<double>(r.possibilities_single));
  r.bits_total = static_cast<double>(stats.n) * r.bits_single;
  r.rounded_bits_single = static_cast<std::uint64_t>(std::floor(r.bits_single + 1e-12));
  r.rounded_bits_total = r.rounded_bits_single * stats.n;
  return r;
}

std::span<const PublishedRange> published_ranges() noexcept {
  static const std::array<PublishedRange, 6> kRows{{
      {"FVC2002 DB1", -0.2504, 0.2132, 4636, 12},
      {"FVC2002 DB2", -0.2409, 0.2484, 4893, 12},
      {"FVC2002 DB3", -0.1919, 0.2372, 4291, 12},
      {"FVC2004 DB1", -0.2487, 0.1748, 4235, 12},
      {"FVC2004 DB2", -0.2357, 0.1950, 4307, 12},
      {"FVC2004 DB3", -0.1947, 0.1796, 3742, 11},
  }};
  return kRows;
}

OrderConstraintGraph::OrderConstraintGraph(std::size_t n) : n_(n), adj_(n, std::vector<bool>(n, false)) {}

bool OrderConstraintGraph::add_edge(std::uint32_t greater, std::uint32_t lesser) {
  if (greater >= n_ || lesser >= n_) throw ParameterError("edge endpoint out of range");
  if (greater == lesser || adj_[greater][lesser]) return false;
  adj_[greater][lesser] = true;
  ++edge_count_;
  return true;
}

bool OrderConstraintGraph::has_edge(std::uint32_t greater, std::uint32_t lesser) const noexcept {
  return greater < n_ && lesser < n_ && adj_[greater][lesser];
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> OrderConstraintGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    for (std::uint32_t b = 0; b < n_; ++b) {
      if (adj_[a][b]) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::vector<bool>> OrderConstraintGraph::closure() const {
  auto reach = adj_;
  for (std::size_t via = 0; via < n_; ++via) {
    for (std::size_t a = 0; a < n_; ++a) {
      if (!reach[a][via]) continue;
      for (std::size_t b = 0; b < n_; ++b) {
        if (reach[via][b]) reach[a][b] = true;
      }
    }
  }
  return reach;
}

bool OrderConstraintGraph::consistent() const {
  // Kahn's algorithm: acyclic iff every node can be removed.
  std::vector<std::size_t> indegree(n_, 0);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) indegree[b] += adj_[a][b] ? 1 : 0;
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t b = 0; b < n_; ++b) {
      if (adj_[v][b] && --indegree[b] == 0) ready.push_back(b);
    }
  }
  return removed == n_;
}

double OrderConstraintGraph::recovered_fraction() const {
  if (n_ < 2) return 0.0;
  const auto reach = closure();
  std::size_t ordered = 0;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      if (reach[a][b] || reach[b][a]) ++ordered;
    }
  }
  return static_cast<double>(ordered) / (static_cast<double>(n_) * static_cast<double>(n_ - 1) / 2.0);
}

std::optional<std::vector<std::uint32_t>> OrderConstraintGraph::total_order() const {
  if (!consistent()) return std::nullopt;
  const auto reach = closure();
  std::vector<std::size_t> below(n_, 0);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (reach[a][b]) ++below[a];
    }
  }
  std::vector<std::uint32_t> order(n_);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return below[a] > below[b]; });
  for (std::size_t r = 0; r < n_; ++r) {
    if (below[order[r]] != n_ - 1 - r) return std::nullopt;
  }
  return order;
}

std::size_t OrderConstraintGraph::false_edges(std::span<const double> truth) const {
  if (truth.size() != n_) throw DimensionError("ground truth has the wrong dimension");
  std::size_t wrong = 0;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (adj_[a][b] && !(truth[a] > truth[b])) ++wrong;
    }
  }
  return wrong;
}

namespace {

// Removes the common factors of two sorted multisets in place.
void cancel_common(std::vector<std::uint32_t>& lhs, std::vector<std::uint32_t>& rhs) {
  std::vector<std::uint32_t> l_rest;
  std::vector<std::uint32_t> r_rest;
  std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(l_rest));
  std::set_difference(rhs.begin(), rhs.end(), lhs.begin(), lhs.end(), std::back_inserter(r_rest));
  lhs = std::move(l_rest);
  rhs = std::move(r_rest);
}

// After cancellation, x_a^r > x_b^r still orders a above b for positive values.
bool single_power(const std::vector<std::uint32_t>& lhs, const std::vector<std::uint32_t>& rhs) {
  if (lhs.empty() || lhs.size() != rhs.size()) return false;
  return std::adjacent_find(lhs.begin(), lhs.end(), std::not_equal_to<>()) == lhs.end() &&
         std::adjacent_find(rhs.begin(), rhs.end(), std::not_equal_to<>()) == rhs.end();
}

}  // namespace

AttackResult arm_order_attack(std::span<const Observation> observations, std::span<const PermutationSet> perms,
                              bool assume_all_positive) {
  if (perms.size() != observations.size()) throw ParameterError("one permutation set per observation required");
  const std::size_t n = observations.empty() ? 0 : observations.front().params.n;
  AttackResult result{OrderConstraintGraph(n), 0, 0, true, 0.0};

  for (std::size_t o = 0; o < observations.size(); ++o) {
    const auto& obs = observations[o];
    const auto& ps = perms[o];
    if (obs.params.n != n || ps.n() != n) throw DimensionError("observations disagree on n");
    if (obs.code.size() != obs.params.m || ps.m() != obs.params.m || ps.p() != obs.params.p) {
      throw DimensionError("observation code does not match its params");
    }
    const std::size_t k = obs.params.k;
    const std::size_t p = obs.params.p;

    std::vector<std::uint32_t> winner(p);
    std::vector<std::uint32_t> loser(p);
    for (std::size_t i = 0; i < obs.params.m; ++i) {
      const std::uint32_t t = obs.code.indices[i];
      if (t < 1 || t > k) throw DataError("observed index outside [1, k]");
      const std::size_t w = t - 1;
      for (std::size_t l = 0; l < p; ++l) winner[l] = ps.perm(i, l)[w];
      std::sort(winner.begin(), winner.end());

      for (std::size_t j = 0; j < k; ++j) {
        if (j == w) continue;
        ++result.product_inequalities;
        for (std::size_t l = 0; l < p; ++l) loser[l] = ps.perm(i, l)[j];
        std::sort(loser.begin(), loser.end());

        auto lhs = winner;
        auto rhs = loser;
        bool usable = p == 1;
        if (!usable && assume_all_positive) {
          cancel_common(lhs, rhs);
          usable = single_power(lhs, rhs);
        }
        if (usable) {
          result.graph.add_edge(lhs.front(), rhs.front());
        } else {
          ++result.unexploited;
        }
      }
    }
  }

  result.consistent = result.graph.consistent();
  result.recovered_fraction = result.graph.recovered_fraction();
  return result;
}

AttackResult arm_order_attack(std::span<const Observation> observations, bool assume_all_positive) {
  std::vector<PermutationSet> perms;
  perms.reserve(observations.size());
  for (const auto& obs : observations) {
    if (obs.code.params_fingerprint != obs.params.fingerprint()) {
      throw IncompatibleTemplateError("observation code was not produced under its stated params");
    }
    perms.emplace_back(obs.params);
  }
  return arm_order_attack(observations, perms, assume_all_positive);
}

AttackStats attack_success_rate(const AttackSettings& settings) {
  if (settings.trials == 0) throw ParameterError("attack simulation needs at least one trial");
  HashParams base = settings.params;
  base.n = settings.n;
  base.validate();

  struct TrialOutcome {
    bool recovered = false;
    bool contradiction = false;
    double fraction = 0.0;
    std::size_t false_edges = 0;
  };
  std::vector<TrialOutcome> outcomes(settings.trials);

  const auto trials = static_cast<std::int64_t>(settings.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t tr = 0; tr < trials; ++tr) {
    const auto trial_seed = derive_seed(settings.seed, static_cast<std::uint64_t>(tr));
    SplitMix64 rng(trial_seed);
    std::vector<double> x(settings.n);
    for (auto& v : x) v = rng.uniform(0.05, 1.0);
    if (settings.sign_mode == SignMode::mixed) {
      std::vector<std::uint32_t> order(settings.n);
      shuffle_indices(rng.next(), order, settings.n);
      for (std::size_t j = 0; j < settings.n / 2; ++j) x[order[j]] = -x[order[j]];
    }

    std::vector<Observation> observations;
    std::vector<PermutationSet> perms;
    observations.reserve(settings.observations);
    perms.reserve(settings.observations);
    for (std::size_t o = 0; o < settings.observations; ++o) {
      const auto params = base.with_seed(derive_seed(trial_seed, 0xa77ac000ULL + o));
      perms.emplace_back(params);
      observations.push_back({hash_template(x, params, perms.back()), params});
    }
    auto attack = arm_order_attack(observations, perms, true);
    if (observations.empty()) attack.graph = OrderConstraintGraph(settings.n);

    auto& out = outcomes[static_cast<std::size_t>(tr)];
    out.contradiction = !attack.consistent;
    out.fraction = attack.recovered_fraction;
    out.false_edges = attack.graph.false_edges(x);
    if (const auto order = attack.graph.total_order()) {
      std::vector<std::uint32_t> truth(settings.n);
      std::iota(truth.begin(), truth.end(), 0U);
      std::sort(truth.begin(), truth.end(), [&](auto a, auto b) { return x[a] > x[b]; });
      out.recovered = *order == truth;
    }
  }

  AttackStats stats;
  stats.trials = settings.trials;
  for (const auto& o : outcomes) {
    stats.full_recovery_rate += o.recovered ? 1.0 : 0.0;
    stats.contradiction_rate += o.contradiction ? 1.0 : 0.0;
    stats.mean_recovered_fraction += o.fraction;
    stats.false_edges += o.false_edges;
  }
  const auto t = static_cast<double>(settings.trials);
  stats.full_recovery_rate /= t;
  stats.contradiction_rate /= t;
  stats.mean_recovered_fraction /= t;
  return stats;
}

}  // namespace rankhash
