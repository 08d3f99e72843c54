#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankhash/hash.hpp"
#include "rankhash/params.hpp"
#include "rankhash/permutation.hpp"

namespace rankhash {

// ---------------------------------------------------------------------------
// Brute-force inversion complexity
// ---------------------------------------------------------------------------

struct FeatureStats {
  double min = 0.0;
  double max = 0.0;
  double delta = 1e-4;
  std::size_t n = 0;
};

/// Range of a dataset's values rounded outward to the precision step.
[[nodiscard]] FeatureStats feature_stats(std::span<const FeatureVector> vectors, double delta = 1e-4);

struct ComplexityReport {
  std::uint64_t possibilities_single = 0;  // round((max - min) / delta)
  double bits_single = 0.0;                // log2(possibilities_single)
  double bits_total = 0.0;                 // n * bits_single
  std::uint64_t rounded_bits_single = 0;   // floor(bits_single)
  std::uint64_t rounded_bits_total = 0;    // n * floor(bits_single)
};

/// Throws ParameterError for delta <= 0, min >= max or n == 0.
[[nodiscard]] ComplexityReport brute_force_complexity(const FeatureStats& stats);

struct PublishedRange {
  std::string database;
  double min = 0.0;
  double max = 0.0;
  std::uint64_t published_possibilities = 0;
  std::uint64_t published_bits = 0;
};

/// Published per-database value ranges for the n = 299 fingerprint vectors.
[[nodiscard]] std::span<const PublishedRange> published_ranges() noexcept;

// ---------------------------------------------------------------------------
// Order recovery from multiple templates
// ---------------------------------------------------------------------------

/// Directed graph over feature indices; an edge a -> b records an inferred
/// "x[a] > x[b]".
class OrderConstraintGraph {
 public:
  explicit OrderConstraintGraph(std::size_t n = 0);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }

  /// Returns true if the edge is new. Self-loops are ignored.
  bool add_edge(std::uint32_t greater, std::uint32_t lesser);
  [[nodiscard]] bool has_edge(std::uint32_t greater, std::uint32_t lesser) const noexcept;
  [[nodiscard]] std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

  /// A strict order is consistent iff the graph is acyclic.
  [[nodiscard]] bool consistent() const;

  /// Fraction of the C(n, 2) pairs ordered by the transitive closure.
  [[nodiscard]] double recovered_fraction() const;

  /// Descending order of all features when the closure is a total order.
  [[nodiscard]] std::optional<std::vector<std::uint32_t>> total_order() const;

  /// Edges that disagree with the given ground truth.
  [[nodiscard]] std::size_t false_edges(std::span<const double> truth) const;

 private:
  [[nodiscard]] std::vector<std::vector<bool>> closure() const;

  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<bool>> adj_;
};

/// One compromised template together with the parameters the attacker knows.
struct Observation {
  HashedCode code;
  HashParams params;
};

struct AttackResult {
  OrderConstraintGraph graph;
  std::size_t product_inequalities = 0;  // winner-vs-loser product relations read
  std::size_t unexploited = 0;           // relations that did not reduce to one element pair
  bool consistent = true;
  double recovered_fraction = 0.0;
};

/// Reads every hash function's winner-over-loser product inequalities and
/// cancels common factors. With assume_all_positive, a relation that reduces
/// to x_a^r > x_b^r (r = 1 is the plain cancellation case) becomes the edge
/// a -> b; without it only p = 1 relations, which need no cancellation, are
/// used. Throws DimensionError if observations disagree on n.
[[nodiscard]] AttackResult arm_order_attack(std::span<const Observation> observations, bool assume_all_positive);

/// Variant that reuses already derived permutation sets (one per observation).
[[nodiscard]] AttackResult arm_order_attack(std::span<const Observation> observations,
                                            std::span<const PermutationSet> perms, bool assume_all_positive);

enum class SignMode { all_positive, mixed };

struct AttackSettings {
  std::size_t trials = 100;
  std::size_t n = 8;
  SignMode sign_mode = SignMode::all_positive;
  HashParams params;                 // n is overwritten with `n`
  std::size_t observations = 8;      // templates per trial, each under its own seed
  std::uint64_t seed = 0;
};

struct AttackStats {
  std::size_t trials = 0;
  double full_recovery_rate = 0.0;   // consistent total order equal to the true order
  double contradiction_rate = 0.0;   // cycle detected
  double mean_recovered_fraction = 0.0;
  std::size_t false_edges = 0;       // summed over trials
};

/// Monte Carlo over random vectors. Mixed mode makes half the components
/// negative. Throws ParameterError for zero trials.
[[nodiscard]] AttackStats attack_success_rate(const AttackSettings& settings);

}  // namespace rankhash
