#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankhash/dataset.hpp"
#include "rankhash/kernels.hpp"
#include "rankhash/params.hpp"

namespace rankhash {

enum class Protocol { fvc, all_pairs };

Protocol parse_protocol(const std::string& name);
std::string to_string(Protocol protocol);

struct ProtocolOptions {
  Protocol protocol = Protocol::fvc;
  /// Sample used for FVC imposter pairs (0 = first retained sample).
  std::size_t imposter_sample = 0;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// One comparison. For genuine/imposter entries lhs and rhs index
/// Dataset::flatten(); for pseudo-imposter entries lhs is the sample and rhs
/// the reissue number (1 .. reissues-1) compared against reissue 0.
struct ScoreEntry {
  double score = 0.0;
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
};

struct ScoreSet {
  std::vector<ScoreEntry> genuine;
  std::vector<ScoreEntry> imposter;
  std::vector<ScoreEntry> pseudo_imposter;
  std::vector<std::string> warnings;
};

std::vector<double> scores_of(std::span<const ScoreEntry> entries);

/// Genuine: every within-subject sample pair. Imposter: FVC pairs the chosen
/// sample of each subject with the same sample of every later subject;
/// all_pairs compares every sample of every subject pair. All templates share
/// one permutation set. Subjects with fewer than two samples are dropped with
/// a warning. Throws DimensionError if params.n != ds.n.
[[nodiscard]] ScoreSet run_protocol(const Dataset& ds, const HashParams& params, const ProtocolOptions& options = {});

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  std::vector<double> thresholds;
  std::vector<double> far;  // fraction of imposter scores >= threshold
  std::vector<double> frr;  // fraction of genuine scores < threshold
};

/// Sweeps thresholds over the observed scores (plus one sentinel above the
/// maximum) and linearly interpolates the FAR/FRR crossing. Throws
/// ParameterError if either list is empty.
[[nodiscard]] EerResult compute_eer(std::span<const double> genuine, std::span<const double> imposter);
[[nodiscard]] EerResult compute_eer(const ScoreSet& scores);

struct SweepGrid {
  std::vector<std::size_t> k;
  std::vector<std::size_t> p;
  std::vector<std::size_t> m;
  std::size_t repeats = 5;
  std::uint64_t base_seed = 0;
};

struct SweepRow {
  std::size_t k = 0;
  std::size_t p = 0;
  std::size_t m = 0;
  double mean_eer = 0.0;
  double std_eer = 0.0;  // sample standard deviation, 0 for one repeat
  std::vector<double> eers;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

/// Seed of repeat r in a sweep; identical for every cell so cells differ only
/// in (k, p, m).
[[nodiscard]] std::uint64_t repeat_seed(std::uint64_t base_seed, std::size_t repeat) noexcept;

/// Runs every (k, p, m) cell for `repeats` seeds. Invalid cells are skipped
/// with a warning.
[[nodiscard]] SweepResult sweep(const Dataset& ds, const SweepGrid& grid, const ProtocolOptions& options = {});

/// Distinct reissue seeds derived from base.
[[nodiscard]] std::vector<std::uint64_t> reissue_seeds(std::uint64_t base, std::size_t count);

/// Hashes every sample under each seed; pseudo-imposter scores compare the
/// code under seeds[0] with the code under each later seed. Genuine and
/// imposter scores come from run_protocol under params.master_seed. Throws
/// ParameterError for fewer than two seeds, SeedReuseError on duplicates.
[[nodiscard]] ScoreSet cancellability_experiment(const Dataset& ds, const HashParams& params,
                                                 std::span<const std::uint64_t> seeds,
                                                 const ProtocolOptions& options = {});

[[nodiscard]] ScoreSet cancellability_experiment(const Dataset& ds, const HashParams& params,
                                                 std::size_t num_reissues = 101, const ProtocolOptions& options = {});

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
};

/// Fixed-width histogram on [lo, hi]; the last bin is closed on the right and
/// out-of-range values are clamped into the end bins.
[[nodiscard]] Histogram histogram(std::span<const double> values, std::size_t bins, double lo = 0.0, double hi = 1.0);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
[[nodiscard]] double ks_statistic(std::span<const double> a, std::span<const double> b);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

[[nodiscard]] Summary summarize(std::span<const double> values) noexcept;

}  // namespace rankhash
