#include "rankhash/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "rankhash/error.hpp"
#include "rankhash/rng.hpp"

namespace rankhash {

std::size_t Dataset::sample_count() const noexcept {
  std::size_t total = 0;
  for (const auto& s : subjects) total += s.samples.size();
  return total;
}

std::vector<FeatureVector> Dataset::flatten() const {
  std::vector<FeatureVector> out;
  out.reserve(sample_count());
  for (const auto& s : subjects) out.insert(out.end(), s.samples.begin(), s.samples.end());
  return out;
}

void Dataset::validate() const {
  for (const auto& s : subjects) {
    for (const auto& v : s.samples) {
      if (v.size() != n) {
        throw DimensionError("sample " + s.id + "/" + v.sample_id + " has " + std::to_string(v.size()) +
                             " components, dataset declares " + std::to_string(n));
      }
      require_finite(v.view());
    }
  }
}

BaseDistribution parse_base_distribution(std::string_view name) {
  if (name == "uniform") return BaseDistribution::uniform;
  if (name == "spectral") return BaseDistribution::spectral;
  throw ConfigError("unknown base distribution '" + std::string(name) + "' (expected uniform or spectral)");
}

std::string_view to_string(BaseDistribution b) noexcept {
  return b == BaseDistribution::spectral ? "spectral" : "uniform";
}

SyntheticSpec calibrated_spec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.base = BaseDistribution::spectral;
  spec.sigma = 0.003;
  spec.seed = seed;
  return spec;
}

Dataset synthesize_dataset(const SyntheticSpec& spec) {
  if (spec.sigma < 0.0) throw ParameterError("sigma must be non-negative");
  if (spec.subjects == 0) throw ParameterError("synthetic dataset needs at least one subject");
  if (spec.samples_per_subject == 0) throw ParameterError("synthetic dataset needs at least one sample per subject");
  if (spec.n == 0) throw ParameterError("synthetic dataset needs n > 0");
  const bool spectral = spec.base == BaseDistribution::spectral;
  if (!spectral && !(spec.low < spec.high)) throw ParameterError("base range must satisfy low < high");
  if (spectral && !(spec.scale > 0.0)) throw ParameterError("spectral scale must be positive");
  if (spectral && !(spec.decay >= 0.0)) throw ParameterError("spectral decay must be non-negative");

  Dataset ds;
  ds.n = spec.n;
  std::ostringstream prov;
  prov << "synthetic(subjects=" << spec.subjects << ",samples=" << spec.samples_per_subject << ",n=" << spec.n
       << ",sigma=" << spec.sigma << ",base=" << to_string(spec.base);
  if (spectral) {
    prov << ",scale=" << spec.scale << ",decay=" << spec.decay;
  } else {
    prov << ",low=" << spec.low << ",high=" << spec.high;
  }
  prov << ",seed=" << spec.seed << ")";
  ds.provenance = prov.str();
  ds.subjects.resize(spec.subjects);

  // Every subject owns an independent stream so datasets nest: growing
  // `subjects` keeps the earlier subjects unchanged.
  for (std::size_t u = 0; u < spec.subjects; ++u) {
    SplitMix64 rng(derive_seed(spec.seed, u));
    auto& subject = ds.subjects[u];
    subject.id = "s" + std::to_string(u + 1);
    std::vector<double> base(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) {
      base[j] = spectral ? spec.scale * rng.normal() * std::pow(static_cast<double>(j + 1), -spec.decay)
                         : rng.uniform(spec.low, spec.high);
    }
    subject.samples.resize(spec.samples_per_subject);
    for (std::size_t s = 0; s < spec.samples_per_subject; ++s) {
      auto& sample = subject.samples[s];
      sample.subject_id = subject.id;
      sample.sample_id = std::to_string(s + 1);
      sample.values = base;
      if (spec.sigma > 0.0) {
        for (auto& v : sample.values) v += spec.sigma * rng.normal();
      }
    }
  }
  return ds;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in, const std::string& provenance) {
  Dataset ds;
  ds.provenance = provenance;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError("dataset CSV is empty (header row required)");
  ++line_no;
  const auto header = split_csv(trim(line));
  if (header.size() < 3) throw DataError("dataset CSV header needs subject_id, sample_id and at least one feature");
  ds.n = header.size() - 2;

  std::unordered_map<std::string, std::size_t> subject_index;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    ++data_row;
    const auto fields = split_csv(row);
    const auto where = "data row " + std::to_string(data_row) + " (line " + std::to_string(line_no) + ")";
    if (fields.size() != ds.n + 2) {
      throw DataError(where + ": expected " + std::to_string(ds.n + 2) + " fields, found " +
                      std::to_string(fields.size()));
    }
    FeatureVector v;
    v.subject_id = std::string(trim(fields[0]));
    v.sample_id = std::string(trim(fields[1]));
    if (v.subject_id.empty()) throw DataError(where + ": empty subject_id");
    v.values.resize(ds.n);
    for (std::size_t j = 0; j < ds.n; ++j) {
      const auto text = trim(fields[j + 2]);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw DataError(where + ": feature " + std::to_string(j + 1) + " is not a number ('" + std::string(text) +
                        "')");
      }
      if (!std::isfinite(value)) throw DataError(where + ": feature " + std::to_string(j + 1) + " is not finite");
      v.values[j] = value;
    }
    auto [it, inserted] = subject_index.try_emplace(v.subject_id, ds.subjects.size());
    if (inserted) ds.subjects.push_back(Subject{v.subject_id, {}});
    ds.subjects[it->second].samples.push_back(std::move(v));
  }
  return ds;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return read_dataset_csv(in, path.string());
}

void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  out << "subject_id,sample_id";
  for (std::size_t j = 0; j < ds.n; ++j) out << ",f" << (j + 1);
  out << '\n';
  char buf[32];
  for (const auto& s : ds.subjects) {
    for (const auto& v : s.samples) {
      out << s.id << ',' << v.sample_id;
      for (const double x : v.values) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
        out << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
      }
      out << '\n';
    }
  }
}

}  // namespace rankhash
