#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "rankhash/dataset.hpp"
#include "rankhash/eval.hpp"
#include "rankhash/params.hpp"

namespace rankhash::cli {

// Declarative experiment description, loaded from one JSON file:
//
// {
//   "dataset": {"csv": "vectors.csv"}              (relative to the config file)
//           or {"synthetic": {"subjects": 100, "samples_per_subject": 5, "n": 299,
//                             "sigma": 0.003, "base": "spectral", "scale": 0.1,
//                             "decay": 1.0, "low": -0.25, "high": 0.21, "seed": 99}},
//   "params": {"n": 299, "m": 600, "k": 250, "p": 2, "master_seed": "42"},
//   "protocol": "fvc" | "all_pairs",
//   "imposter_sample": 0,
//   "sweep": {"k": [...], "p": [...], "m": [...], "repeats": 5},
//   "reissues": 101,
//   "out_dir": "results/eval",                     (relative to the config file)
//   "seed": 42,
//   "histogram_bins": 50
// }
//
// Every key is optional except what the chosen command needs. Unknown keys
// are rejected so typos do not silently fall back to defaults.
struct DatasetSource {
  std::optional<std::filesystem::path> csv;
  SyntheticSpec synthetic;
};

struct ExperimentConfig {
  std::optional<DatasetSource> dataset;
  std::optional<HashParams> params;
  ProtocolOptions protocol;
  std::optional<SweepGrid> sweep;
  std::size_t reissues = 101;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t histogram_bins = 50;
};

/// Throws ConfigError on schema violations or missing files.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// "n,m,k,p" -> HashParams with master_seed 0. Throws ConfigError.
[[nodiscard]] HashParams parse_params_flag(const std::string& text);

[[nodiscard]] Dataset load_dataset(const DatasetSource& source);

}  // namespace rankhash::cli
