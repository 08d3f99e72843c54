#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankhash/hash.hpp"
#include "rankhash/params.hpp"

namespace rankhash {

/// One stored protected template.
struct TemplateRecord {
  std::string subject_id;
  std::string sample_id;
  HashedCode code;
  HashParams params;
  std::string created_by;  // tool name and version; no timestamps so reruns are byte-identical

  friend bool operator==(const TemplateRecord&, const TemplateRecord&) = default;
};

/// JSON-lines store, one record per line:
///   {"subject_id", "sample_id", "params", "code", "created_by"[, "code_bin"]}
/// code_bin is the hex-encoded compact binary form. Throws DataError (with
/// the line number) on malformed lines or a fingerprint that does not match
/// the embedded params.
void write_store(std::ostream& out, const std::vector<TemplateRecord>& records, bool with_binary = false);
[[nodiscard]] std::vector<TemplateRecord> read_store(std::istream& in);
[[nodiscard]] std::vector<TemplateRecord> load_store(const std::filesystem::path& path);

}  // namespace rankhash
