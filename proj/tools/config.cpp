#include "config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "rankhash/codec.hpp"
#include "rankhash/error.hpp"

namespace rankhash::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

std::uint64_t read_u64(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  throw ConfigError(what + " must be a non-negative integer");
}

std::size_t read_size(const json& v, const std::string& what) { return static_cast<std::size_t>(read_u64(v, what)); }

double read_double(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

std::vector<std::size_t> read_sizes(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ConfigError(what + " must be a non-empty array");
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(read_size(e, what));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

SyntheticSpec read_synthetic(const json& j) {
  reject_unknown(j, {"subjects", "samples_per_subject", "n", "sigma", "base", "low", "high", "scale", "decay", "seed"},
                 "dataset.synthetic");
  SyntheticSpec s;
  if (j.contains("subjects")) s.subjects = read_size(j["subjects"], "subjects");
  if (j.contains("samples_per_subject")) s.samples_per_subject = read_size(j["samples_per_subject"], "samples_per_subject");
  if (j.contains("n")) s.n = read_size(j["n"], "n");
  if (j.contains("sigma")) s.sigma = read_double(j["sigma"], "sigma");
  if (j.contains("base")) {
    if (!j["base"].is_string()) throw ConfigError("base must be a string");
    s.base = parse_base_distribution(j["base"].get<std::string>());
  }
  if (j.contains("low")) s.low = read_double(j["low"], "low");
  if (j.contains("high")) s.high = read_double(j["high"], "high");
  if (j.contains("scale")) s.scale = read_double(j["scale"], "scale");
  if (j.contains("decay")) s.decay = read_double(j["decay"], "decay");
  if (j.contains("seed")) s.seed = read_u64(j["seed"], "dataset seed");
  return s;
}

}  // namespace

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j,
                 {"dataset", "params", "protocol", "imposter_sample", "sweep", "reissues", "out_dir", "seed",
                  "histogram_bins", "description"},
                 "config");
  ExperimentConfig cfg;

  if (j.contains("seed")) cfg.seed = read_u64(j["seed"], "seed");

  if (j.contains("dataset")) {
    const auto& d = j["dataset"];
    reject_unknown(d, {"csv", "synthetic"}, "dataset");
    if (d.contains("csv") == d.contains("synthetic")) throw ConfigError("dataset needs exactly one of csv or synthetic");
    DatasetSource src;
    if (d.contains("csv")) {
      if (!d["csv"].is_string()) throw ConfigError("dataset.csv must be a path string");
      src.csv = resolve(base_dir, d["csv"].get<std::string>());
      if (!std::filesystem::exists(*src.csv)) throw ConfigError("dataset file not found: " + src.csv->string());
    } else {
      src.synthetic = read_synthetic(d["synthetic"]);
    }
    cfg.dataset = std::move(src);
  }

  if (j.contains("params")) {
    const auto& p = j["params"];
    reject_unknown(p, {"n", "m", "k", "p", "master_seed"}, "params");
    HashParams hp;
    hp.n = read_size(p.value("n", json(0)), "params.n");
    hp.m = read_size(p.value("m", json(0)), "params.m");
    hp.k = read_size(p.value("k", json(0)), "params.k");
    hp.p = read_size(p.value("p", json(1)), "params.p");
    if (p.contains("master_seed")) {
      hp.master_seed = read_u64(p["master_seed"], "params.master_seed");
    } else if (cfg.seed) {
      hp.master_seed = *cfg.seed;
    }
    cfg.params = hp;
  }

  if (j.contains("protocol")) {
    if (!j["protocol"].is_string()) throw ConfigError("protocol must be a string");
    cfg.protocol.protocol = parse_protocol(j["protocol"].get<std::string>());
  }
  if (j.contains("imposter_sample")) cfg.protocol.imposter_sample = read_size(j["imposter_sample"], "imposter_sample");

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    reject_unknown(s, {"k", "p", "m", "repeats"}, "sweep");
    SweepGrid grid;
    if (!s.contains("k") || !s.contains("p") || !s.contains("m")) throw ConfigError("sweep needs k, p and m lists");
    grid.k = read_sizes(s["k"], "sweep.k");
    grid.p = read_sizes(s["p"], "sweep.p");
    grid.m = read_sizes(s["m"], "sweep.m");
    if (s.contains("repeats")) grid.repeats = read_size(s["repeats"], "sweep.repeats");
    if (grid.repeats == 0) throw ConfigError("sweep.repeats must be positive");
    grid.base_seed = cfg.seed.value_or(0);
    cfg.sweep = std::move(grid);
  }

  if (j.contains("reissues")) cfg.reissues = read_size(j["reissues"], "reissues");
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ConfigError("out_dir must be a path string");
    cfg.out_dir = resolve(base_dir, j["out_dir"].get<std::string>());
  }
  if (j.contains("histogram_bins")) cfg.histogram_bins = read_size(j["histogram_bins"], "histogram_bins");
  if (cfg.histogram_bins == 0) throw ConfigError("histogram_bins must be positive");

  // Grid values are checked against the feature dimension up front.
  if (cfg.sweep && cfg.dataset) {
    const std::size_t n = cfg.dataset->csv ? 0 : cfg.dataset->synthetic.n;
    if (n != 0) {
      for (auto k : cfg.sweep->k) {
        if (k < 2 || k > n) throw ConfigError("sweep.k value " + std::to_string(k) + " is outside [2, n]");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

HashParams parse_params_flag(const std::string& text) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw ConfigError("--params expects n,m,k,p as integers, got '" + text + "'");
    }
    parts.push_back(v);
  }
  if (parts.size() != 4) throw ConfigError("--params expects exactly four values n,m,k,p");
  return HashParams{parts[0], parts[1], parts[2], parts[3], 0};
}

Dataset load_dataset(const DatasetSource& source) {
  if (source.csv) return load_dataset_csv(*source.csv);
  return synthesize_dataset(source.synthetic);
}

}  // namespace rankhash::cli
