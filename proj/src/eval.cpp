#include "rankhash/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rankhash/error.hpp"
#include "rankhash/rng.hpp"

namespace rankhash {

Protocol parse_protocol(const std::string& name) {
  if (name == "fvc") return Protocol::fvc;
  if (name == "all-pairs" || name == "all_pairs") return Protocol::all_pairs;
  throw ConfigError("unknown protocol '" + name + "' (expected fvc or all-pairs)");
}

std::string to_string(Protocol protocol) { return protocol == Protocol::fvc ? "fvc" : "all-pairs"; }

std::vector<double> scores_of(std::span<const ScoreEntry> entries) {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.score);
  return out;
}

namespace {

std::vector<ScoreEntry> score_pairs(std::span<const HashedCode> codes, std::vector<kernels::IndexPair> pairs,
                                    std::size_t m, kernels::Exec exec) {
  const auto counts = kernels::collisions(codes, pairs, exec);
  std::vector<ScoreEntry> out(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    out[r] = {static_cast<double>(counts[r]) / static_cast<double>(m), pairs[r].lhs, pairs[r].rhs};
  }
  return out;
}

}  // namespace

ScoreSet run_protocol(const Dataset& ds, const HashParams& params, const ProtocolOptions& options) {
  params.validate();
  if (params.n != ds.n) {
    throw DimensionError("params.n=" + std::to_string(params.n) + " but dataset has n=" + std::to_string(ds.n));
  }
  ds.validate();

  ScoreSet out;
  struct Kept {
    std::uint32_t offset;
    std::uint32_t count;
  };
  std::vector<Kept> kept;
  std::uint32_t offset = 0;
  for (const auto& s : ds.subjects) {
    const auto count = static_cast<std::uint32_t>(s.samples.size());
    if (count < 2) {
      out.warnings.push_back("subject " + s.id + " has fewer than 2 samples; excluded");
    } else {
      if (options.protocol == Protocol::fvc && options.imposter_sample >= count) {
        throw ParameterError("subject " + s.id + " has no sample " + std::to_string(options.imposter_sample + 1) +
                             " for imposter pairing");
      }
      kept.push_back({offset, count});
    }
    offset += count;
  }

  const auto templates = ds.flatten();
  const PermutationSet perms(params);
  const auto codes = kernels::hash_batch(templates, params, perms, options.exec);

  std::vector<kernels::IndexPair> genuine;
  for (const auto& s : kept) {
    for (std::uint32_t a = 0; a < s.count; ++a) {
      for (std::uint32_t b = a + 1; b < s.count; ++b) genuine.push_back({s.offset + a, s.offset + b});
    }
  }

  std::vector<kernels::IndexPair> imposter;
  const auto pick = static_cast<std::uint32_t>(options.imposter_sample);
  for (std::size_t u = 0; u < kept.size(); ++u) {
    for (std::size_t v = u + 1; v < kept.size(); ++v) {
      if (options.protocol == Protocol::fvc) {
        imposter.push_back({kept[u].offset + pick, kept[v].offset + pick});
      } else {
        for (std::uint32_t a = 0; a < kept[u].count; ++a) {
          for (std::uint32_t b = 0; b < kept[v].count; ++b) imposter.push_back({kept[u].offset + a, kept[v].offset + b});
        }
      }
    }
  }

  out.genuine = score_pairs(codes, std::move(genuine), params.m, options.exec);
  out.imposter = score_pairs(codes, std::move(imposter), params.m, options.exec);
  return out;
}

EerResult compute_eer(std::span<const double> genuine, std::span<const double> imposter) {
  if (genuine.empty() || imposter.empty()) throw ParameterError("EER needs non-empty genuine and imposter scores");

  std::vector<double> gen(genuine.begin(), genuine.end());
  std::vector<double> imp(imposter.begin(), imposter.end());
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());

  EerResult out;
  out.thresholds.reserve(gen.size() + imp.size() + 1);
  std::merge(gen.begin(), gen.end(), imp.begin(), imp.end(), std::back_inserter(out.thresholds));
  out.thresholds.erase(std::unique(out.thresholds.begin(), out.thresholds.end()), out.thresholds.end());
  out.thresholds.push_back(std::nextafter(out.thresholds.back(), std::numeric_limits<double>::infinity()));

  const auto ng = static_cast<double>(gen.size());
  const auto ni = static_cast<double>(imp.size());
  out.far.reserve(out.thresholds.size());
  out.frr.reserve(out.thresholds.size());
  for (const double t : out.thresholds) {
    const auto imp_below = std::lower_bound(imp.begin(), imp.end(), t) - imp.begin();
    const auto gen_below = std::lower_bound(gen.begin(), gen.end(), t) - gen.begin();
    out.far.push_back((ni - static_cast<double>(imp_below)) / ni);
    out.frr.push_back(static_cast<double>(gen_below) / ng);
  }

  // FAR - FRR starts at 1 (lowest threshold) and ends at -1 (sentinel).
  for (std::size_t b = 1; b < out.thresholds.size(); ++b) {
    const double db = out.far[b] - out.frr[b];
    if (db > 0.0) continue;
    if (db == 0.0) {
      out.eer = out.far[b];
      out.threshold = out.thresholds[b];
    } else {
      const std::size_t a = b - 1;
      const double da = out.far[a] - out.frr[a];
      const double alpha = da / (da - db);
      out.eer = out.far[a] + alpha * (out.far[b] - out.far[a]);
      out.threshold = out.thresholds[a] + alpha * (out.thresholds[b] - out.thresholds[a]);
    }
    break;
  }
  return out;
}

EerResult compute_eer(const ScoreSet& scores) {
  const auto g = scores_of(scores.genuine);
  const auto i = scores_of(scores.imposter);
  return compute_eer(g, i);
}

std::uint64_t repeat_seed(std::uint64_t base_seed, std::size_t repeat) noexcept {
  return derive_seed(base_seed, 0x5eed0000ULL + repeat);
}

SweepResult sweep(const Dataset& ds, const SweepGrid& grid, const ProtocolOptions& options) {
  SweepResult out;
  if (grid.repeats == 0) throw ParameterError("sweep needs at least one repeat");
  for (const auto p : grid.p) {
    for (const auto k : grid.k) {
      for (const auto m : grid.m) {
        HashParams params{ds.n, m, k, p, 0};
        try {
          params.validate();
        } catch (const ParameterError& e) {
          out.warnings.push_back("skipping cell k=" + std::to_string(k) + " p=" + std::to_string(p) +
                                 " m=" + std::to_string(m) + ": " + e.what());
          continue;
        }
        SweepRow row{k, p, m, 0.0, 0.0, {}};
        for (std::size_t r = 0; r < grid.repeats; ++r) {
          params.master_seed = repeat_seed(grid.base_seed, r);
          row.eers.push_back(compute_eer(run_protocol(ds, params, options)).eer);
        }
        const auto summary = summarize(row.eers);
        row.mean_eer = summary.mean;
        row.std_eer = summary.stddev;
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> reissue_seeds(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(count);
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t c = 0; seeds.size() < count; ++c) {
    const auto s = derive_seed(base, 0xcafe000000ULL + c);
    if (seen.insert(s).second) seeds.push_back(s);
  }
  return seeds;
}

ScoreSet cancellability_experiment(const Dataset& ds, const HashParams& params, std::span<const std::uint64_t> seeds,
                                   const ProtocolOptions& options) {
  if (seeds.size() < 2) throw ParameterError("cancellability needs at least two reissue seeds");
  std::unordered_set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw SeedReuseError("reissue seeds must be distinct");

  ScoreSet out = run_protocol(ds, params, options);

  const auto templates = ds.flatten();
  const auto first_params = params.with_seed(seeds[0]);
  const auto first = kernels::hash_batch(templates, first_params, PermutationSet(first_params), options.exec);

  out.pseudo_imposter.reserve(templates.size() * (seeds.size() - 1));
  for (std::size_t r = 1; r < seeds.size(); ++r) {
    const auto reissued_params = params.with_seed(seeds[r]);
    const auto reissued =
        kernels::hash_batch(templates, reissued_params, PermutationSet(reissued_params), options.exec);
    const auto counts = kernels::rowwise_collisions(first, reissued, options.exec);
    for (std::size_t t = 0; t < templates.size(); ++t) {
      out.pseudo_imposter.push_back({static_cast<double>(counts[t]) / static_cast<double>(params.m),
                                     static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(r)});
    }
  }
  return out;
}

ScoreSet cancellability_experiment(const Dataset& ds, const HashParams& params, std::size_t num_reissues,
                                   const ProtocolOptions& options) {
  if (num_reissues < 2) throw ParameterError("cancellability needs at least two reissues");
  const auto seeds = reissue_seeds(params.master_seed, num_reissues);
  return cancellability_experiment(ds, params, seeds, options);
}

Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
  if (bins == 0) throw ParameterError("histogram needs at least one bin");
  if (!(lo < hi)) throw ParameterError("histogram range must satisfy lo < hi");
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  }
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (const double v : values) {
    auto b = static_cast<std::ptrdiff_t>(std::floor((v - lo) / width));
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ParameterError("KS statistic needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

Summary summarize(std::span<const double> values) noexcept {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

}  // namespace rankhash
