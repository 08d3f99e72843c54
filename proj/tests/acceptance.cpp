// Acceptance runner: one PASS/FAIL line per criterion.
//   rankhash_acceptance            run all eight
//   rankhash_acceptance --only N   run criterion N
// Exit status is non-zero when any executed criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "rankhash/dataset.hpp"
#include "rankhash/eval.hpp"
#include "rankhash/hash.hpp"
#include "rankhash/kernels.hpp"
#include "rankhash/matching.hpp"
#include "rankhash/permutation.hpp"
#include "rankhash/rng.hpp"
#include "rankhash/security.hpp"

using namespace rankhash;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Dataset shared by the trend and cancellability criteria.
const Dataset& trend_dataset() {
  static const Dataset ds = synthesize_dataset(calibrated_spec(99));
  return ds;
}

std::vector<std::vector<std::uint32_t>> copy_perms(const PermutationSet& set, std::size_t i) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t l = 0; l < set.p(); ++l) {
    const auto s = set.perm(i, l);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

void ac1_collision_probability(Outcome& out) {
  constexpr std::size_t n = 20;
  constexpr std::size_t k = 5;
  constexpr std::size_t m = 100000;
  SplitMix64 rng(2024);
  std::size_t within = 0;
  double worst_z = 0.0;

  for (std::size_t pair = 0; pair < 20; ++pair) {
    // b is a noisy copy of a; the noise level sweeps from strongly to weakly
    // correlated so the predicted probabilities cover a wide range.
    std::vector<double> a(n), b(n);
    const double noise = 0.05 + 0.1 * static_cast<double>(pair);
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = rng.normal();
      b[j] = a[j] + noise * rng.normal();
    }
    const HashParams params{n, m, k, 1, 1000 + pair};
    const auto perms = derive_permutations(params);
    const double predicted = collision_probability(a, b, k);
    const double observed =
        collision_score(hash_template(a, params, perms), hash_template(b, params, perms)).score;
    const double sd = std::sqrt(predicted * (1.0 - predicted) / static_cast<double>(m));
    const double z = std::abs(observed - predicted) / sd;
    worst_z = std::max(worst_z, z);
    if (z <= 3.0) ++within;
  }
  out.detail << within << "/20 pairs within 3 sd (max |z| = " << worst_z << ")";
  out.check(within == 20, "empirical rate outside 3 binomial sd");

  // Exactness against full enumeration of n! orderings.
  double worst_gap = 0.0;
  for (std::size_t small = 3; small <= 7; ++small) {
    for (std::size_t trial = 0; trial < 4; ++trial) {
      std::vector<double> a(small), b(small);
      for (std::size_t j = 0; j < small; ++j) {
        a[j] = rng.normal();
        b[j] = rng.normal();
      }
      for (std::size_t kk = 2; kk <= small; ++kk) {
        const double gap =
            std::abs(collision_probability(a, b, kk) - oracle::enumerate_collision_probability(a, b, kk));
        worst_gap = std::max(worst_gap, gap);
      }
    }
  }
  out.detail << "; enumeration n<=7 max gap " << worst_gap;
  out.check(worst_gap < 1e-12, "closed form disagrees with enumeration");
}

void ac2_worked_example(Outcome& out) {
  const std::vector<double> x{-0.2, 0.5, -0.1};
  // Copy 1 reads (x_c, x_a, x_b), copy 2 reads (x_b, x_c, x_a).
  const auto perms = PermutationSet::from_arrays(3, 1, 2, 0, {2, 0, 1, 1, 2, 0});
  const HashParams params{3, 1, 3, 2, 0};
  const std::span<const std::uint32_t> copies[] = {perms.perm(0, 0), perms.perm(0, 1)};
  const auto product = product_code(x, copies, 3);
  const std::vector<double> expected{-0.05, 0.02, -0.1};
  bool product_ok = product.values.size() == 3;
  for (std::size_t j = 0; product_ok && j < 3; ++j) product_ok = std::abs(product.values[j] - expected[j]) < 1e-12;
  out.check(product_ok, "product code");

  const auto code = hash_template(x, params, perms);
  out.check(code.indices == std::vector<std::uint32_t>{2}, "hashed index");

  const std::vector<Observation> obs{{code, params}};
  const std::vector<PermutationSet> sets{perms};
  const auto attack = arm_order_attack(obs, sets, true);
  const bool inferred_a_over_b = attack.graph.has_edge(0, 1);
  out.check(inferred_a_over_b, "cancellation did not infer x_a > x_b");
  out.check(x[0] < x[1], "ground truth");
  out.detail << "product {" << product.values[0] << ", " << product.values[1] << ", " << product.values[2]
             << "}, index " << (code.indices.empty() ? 0 : code.indices[0]) << ", inferred x_a > x_b while x_a = "
             << x[0] << " < x_b = " << x[1] << " (false edges " << attack.graph.false_edges(x) << ")";
}

void ac3_table(Outcome& out) {
  for (const auto& row : published_ranges()) {
    const auto report = brute_force_complexity({row.min, row.max, 1e-4, 299});
    const bool ok = report.possibilities_single == row.published_possibilities &&
                    report.rounded_bits_single == row.published_bits;
    out.detail << row.database << " " << report.possibilities_single << "/" << row.published_possibilities << " 2^"
               << report.rounded_bits_single << (ok ? "" : " MISMATCH") << "; ";
    out.check(ok, row.database);
  }
}

void ac4_protocol(Outcome& out) {
  const auto& ds = trend_dataset();
  const HashParams params{299, 600, 128, 2, 7};
  const auto scores = run_protocol(ds, params);
  out.detail << "genuine " << scores.genuine.size() << ", imposter " << scores.imposter.size();
  out.check(scores.genuine.size() == 1000, "genuine count");
  out.check(scores.imposter.size() == 4950, "imposter count");
  const auto cancel = cancellability_experiment(ds, params, 101);
  out.detail << ", pseudo-imposter " << cancel.pseudo_imposter.size();
  out.check(cancel.pseudo_imposter.size() == 50000, "pseudo-imposter count");
}

void ac5_trends(Outcome& out) {
  const auto& ds = trend_dataset();
  auto cell = [&](std::size_t k, std::size_t p, std::size_t m) {
    auto result = sweep(ds, {{k}, {p}, {m}, 5, 42});
    return result.rows.at(0);
  };
  const auto base = cell(250, 2, 600);
  const auto small_k = cell(50, 2, 600);
  const auto small_m = cell(250, 2, 10);
  const auto big_p = cell(250, 5, 600);

  auto fmt = [&](const char* name, const SweepRow& r) {
    out.detail << name << " " << 100.0 * r.mean_eer << "% (sd " << 100.0 * r.std_eer << "); ";
  };
  fmt("k250/p2/m600", base);
  fmt("k50", small_k);
  fmt("m10", small_m);
  fmt("p5", big_p);

  out.check(base.mean_eer >= 0.01 && base.mean_eer <= 0.15, "baseline EER outside [1%, 15%]");
  auto beats = [&](const SweepRow& better, const SweepRow& worse, const char* what) {
    const double margin = worse.mean_eer - better.mean_eer;
    out.check(margin > std::max(better.std_eer, worse.std_eer), what);
  };
  beats(base, small_k, "EER(k=250) < EER(k=50) by > 1 sd");
  beats(base, small_m, "EER(m=600) < EER(m=10) by > 1 sd");
  beats(base, big_p, "EER(p=2) < EER(p=5) by > 1 sd");
}

void ac6_cancellability(Outcome& out) {
  const auto& ds = trend_dataset();
  const auto scores = cancellability_experiment(ds, {299, 600, 128, 2, 7}, 101);
  const auto pseudo = scores_of(scores.pseudo_imposter);
  const auto imposter = scores_of(scores.imposter);
  const auto genuine = scores_of(scores.genuine);
  const auto a = summarize(pseudo);
  const auto b = summarize(imposter);
  const double se = std::sqrt(a.stddev * a.stddev / static_cast<double>(a.count) +
                              b.stddev * b.stddev / static_cast<double>(b.count));
  const double ks = ks_statistic(pseudo, imposter);
  const double gap = std::abs(a.mean - b.mean);
  out.detail << "KS " << ks << ", pseudo mean " << a.mean << " vs imposter mean " << b.mean << " (gap "
             << gap / se << " SE); EER genuine/pseudo " << 100.0 * compute_eer(genuine, pseudo).eer
             << "%, genuine/imposter " << 100.0 * compute_eer(genuine, imposter).eer << "%";
  out.check(ks < 0.1, "KS >= 0.1");
  out.check(gap <= 2.0 * se, "means differ by more than 2 SE");
}

void ac7_attack(Outcome& out) {
  AttackSettings settings;
  settings.trials = 100;
  settings.n = 8;
  settings.params = {8, 200, 4, 2, 0};
  settings.observations = 50;
  settings.seed = 31;

  settings.sign_mode = SignMode::all_positive;
  const auto positive = attack_success_rate(settings);
  settings.sign_mode = SignMode::mixed;
  const auto mixed = attack_success_rate(settings);

  out.detail << "all-positive: full recovery " << positive.full_recovery_rate << ", false edges "
             << positive.false_edges << "; mixed: contradiction rate " << mixed.contradiction_rate << " over "
             << mixed.trials << " trials";
  out.check(positive.full_recovery_rate == 1.0, "positive recovery rate below 1");
  out.check(positive.false_edges == 0, "false edges on positive vectors");
  out.check(mixed.contradiction_rate > 0.5, "contradictions not in the majority");
}

void ac8_determinism(Outcome& out) {
  // Codes produced by tests/oracles/hash_oracle.py, an independent
  // implementation of the seed stream, shuffle and hash.
  std::vector<double> x(8);
  for (std::size_t j = 0; j < 8; ++j) x[j] = std::sin(static_cast<double>(j + 1));
  const bool golden8 = hash_template(x, {8, 16, 4, 2, 20170419}).indices ==
                       std::vector<std::uint32_t>{2, 2, 1, 2, 2, 2, 2, 3, 4, 4, 3, 1, 1, 4, 1, 2};
  std::vector<double> y(32);
  for (std::size_t j = 0; j < 32; ++j) y[j] = static_cast<double>((j * 37) % 23) / 23.0 - 0.4;
  const bool golden32 =
      hash_template(y, {32, 24, 7, 3, 0xDEADBEEF}).indices ==
      std::vector<std::uint32_t>{6, 4, 5, 7, 3, 5, 2, 3, 6, 6, 1, 2, 6, 1, 5, 4, 5, 3, 5, 3, 7, 4, 4, 7};
  out.check(golden8 && golden32, "golden codes");

  // Whole-dataset hashing twice, and serial against parallel.
  const auto vectors = synthesize_dataset(calibrated_spec(5)).flatten();
  const HashParams big{299, 600, 128, 2, 99};
  const auto perms = derive_permutations(big);
  const auto first = kernels::hash_batch(vectors, big, perms, kernels::Exec::parallel);
  const auto second = kernels::hash_batch(vectors, big, perms, kernels::Exec::parallel);
  const auto serial = kernels::hash_batch(vectors, big, perms, kernels::Exec::serial);
  out.check(first == second && first == serial, "repeat or serial/parallel mismatch");

  SplitMix64 rng(8);
  std::size_t cases = 0;
  std::size_t range_fail = 0, tie_fail = 0, scale_fail = 0, repeat_fail = 0;
  const double levels[] = {-1.0, -0.5, 0.5, 1.0, 2.0};
  for (std::size_t c = 0; c < 10000; ++c) {
    const std::size_t n = 2 + rng.bounded(30);
    const std::size_t k = 2 + rng.bounded(n - 1);
    const std::size_t p = 1 + rng.bounded(5);
    const std::size_t m = 1 + rng.bounded(8);
    const HashParams params{n, m, k, p, rng.next()};
    const auto set = derive_permutations(params);

    // Half the cases draw from five levels so exact ties are common.
    std::vector<double> v(n);
    const bool tied = (c % 2) == 0;
    for (auto& e : v) e = tied ? levels[rng.bounded(5)] : rng.uniform(-1.0, 1.0);

    const auto code = hash_template(v, params, set);
    for (std::size_t i = 0; i < m; ++i) {
      if (code.indices[i] < 1 || code.indices[i] > k) ++range_fail;
      const auto naive = oracle::naive_argmax(oracle::naive_product_code(v, copy_perms(set, i), k));
      if (naive != code.indices[i]) ++tie_fail;
    }
    if (hash_template(v, params, set).indices != code.indices) ++repeat_fail;

    // A power of two keeps every product exact, so the invariance is checked
    // bit-for-bit including ties; the other scale is checked off the tie set.
    const double scale = tied ? std::ldexp(1.0, static_cast<int>(rng.bounded(9)) - 4) : rng.uniform(0.01, 100.0);
    std::vector<double> scaled(v);
    for (auto& e : scaled) e *= scale;
    if (hash_template(scaled, params, set).indices != code.indices) ++scale_fail;
    ++cases;
  }
  out.detail << "golden " << (golden8 && golden32 ? "ok" : "MISMATCH") << ", " << vectors.size()
             << " templates identical across runs and serial/parallel, " << cases
             << " random cases: range failures " << range_fail << ", tie-break failures " << tie_fail
             << ", scale failures " << scale_fail << ", repeat failures " << repeat_fail;
  out.check(cases >= 10000, "case count");
  out.check(range_fail == 0 && tie_fail == 0 && scale_fail == 0 && repeat_fail == 0, "property failures");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--only N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "collision probability matches closed form", ac1_collision_probability},
      {2, "worked example product code, index and contradiction", ac2_worked_example},
      {3, "brute-force table rows", ac3_table},
      {4, "protocol score counts", ac4_protocol},
      {5, "EER trends in k, m and p", ac5_trends},
      {6, "pseudo-imposter vs imposter overlap", ac6_cancellability},
      {7, "order-recovery attack", ac7_attack},
      {8, "determinism and invariance", ac8_determinism},
  };

  bool all = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Outcome out;
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << " AC" << c.id << " " << c.title << ": " << out.detail.str()
              << std::endl;
    all = all && out.pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all ? 0 : 1;
}
