#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rankhash/params.hpp"

namespace rankhash {

struct Subject {
  std::string id;
  std::vector<FeatureVector> samples;
};

// How a subject's base vector is drawn.
//   uniform:  base_j ~ U[low, high]
//   spectral: base_j ~ scale * N(0, 1) * (j + 1)^(-decay)
// The spectral variant mimics projected features (KPCA-style) whose leading
// components carry most of the variance; it is what the trend experiments use.
enum class BaseDistribution { uniform, spectral };

[[nodiscard]] BaseDistribution parse_base_distribution(std::string_view name);
[[nodiscard]] std::string_view to_string(BaseDistribution b) noexcept;

/// Each subject draws a base vector and every sample adds independent
/// N(0, sigma^2) noise per component.
struct SyntheticSpec {
  std::size_t subjects = 100;
  std::size_t samples_per_subject = 5;
  std::size_t n = 299;
  double sigma = 0.0;
  BaseDistribution base = BaseDistribution::uniform;
  double low = -0.25;
  double high = 0.21;
  double scale = 0.1;
  double decay = 1.0;
  std::uint64_t seed = 0;
};

/// Calibrated setting used by the trend and cancellability experiments:
/// spectral base (scale 0.1, decay 1), sigma 0.003, 100 x 5 samples, n = 299.
[[nodiscard]] SyntheticSpec calibrated_spec(std::uint64_t seed = 99);

struct Dataset {
  std::vector<Subject> subjects;
  std::size_t n = 0;
  std::string provenance;

  [[nodiscard]] std::size_t sample_count() const noexcept;

  /// All samples in subject order, then sample order.
  [[nodiscard]] std::vector<FeatureVector> flatten() const;

  /// Throws DimensionError if any sample's length differs from n, DataError
  /// on non-finite values.
  void validate() const;
};

/// Throws ParameterError for sigma < 0, zero subjects/samples, n == 0,
/// low >= high (uniform) or a non-positive scale / negative decay (spectral).
[[nodiscard]] Dataset synthesize_dataset(const SyntheticSpec& spec);

/// CSV with a header row, then one row per sample:
///   subject_id,sample_id,v1,...,vn
/// Subjects keep the order of their first appearance. Throws DataError naming
/// the malformed row as "data row R (line L)": R counts non-empty rows after
/// the header, L is the 1-based line in the file.
[[nodiscard]] Dataset read_dataset_csv(std::istream& in, const std::string& provenance = "stream");
[[nodiscard]] Dataset load_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(std::ostream& out, const Dataset& ds);

}  // namespace rankhash
