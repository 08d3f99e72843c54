#include "rankhash/store.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "rankhash/codec.hpp"
#include "rankhash/error.hpp"

namespace rankhash {

using nlohmann::json;

namespace {

std::string hex_bytes(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> unhex_bytes(const std::string& text) {
  if (text.size() % 2 != 0) throw DataError("odd-length hex string");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw DataError("bad hex digit");
  };
  std::vector<std::uint8_t> out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((nibble(text[2 * i]) << 4) | nibble(text[2 * i + 1]));
  }
  return out;
}

}  // namespace

void write_store(std::ostream& out, const std::vector<TemplateRecord>& records, bool with_binary) {
  for (const auto& r : records) {
    json line{{"subject_id", r.subject_id},
              {"sample_id", r.sample_id},
              {"params", to_json(r.params)},
              {"code", to_json(r.code)},
              {"created_by", r.created_by}};
    if (with_binary) line["code_bin"] = hex_bytes(encode_binary(r.code, static_cast<std::uint32_t>(r.params.k)));
    out << line.dump() << '\n';
  }
}

std::vector<TemplateRecord> read_store(std::istream& in) {
  std::vector<TemplateRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto where = "store line " + std::to_string(line_no) + ": ";
    try {
      const auto j = json::parse(line);
      TemplateRecord r;
      r.subject_id = j.at("subject_id").get<std::string>();
      r.sample_id = j.at("sample_id").get<std::string>();
      r.params = params_from_json(j.at("params"));
      r.code = code_from_json(j.at("code"));
      r.created_by = j.value("created_by", std::string{});
      if (r.code.params_fingerprint != r.params.fingerprint()) throw DataError("fingerprint does not match params");
      if (r.code.size() != r.params.m) throw DataError("code length does not match params.m");
      for (const auto t : r.code.indices) {
        if (t < 1 || t > r.params.k) throw DataError("index outside [1, k]");
      }
      if (j.contains("code_bin")) {
        const auto decoded = decode_binary(unhex_bytes(j.at("code_bin").get<std::string>()));
        if (decoded.code != r.code) throw DataError("binary code disagrees with JSON code");
      }
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw DataError(where + e.what());
    } catch (const Error& e) {
      throw DataError(where + e.what());
    }
  }
  return records;
}

std::vector<TemplateRecord> load_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open template store " + path.string());
  return read_store(in);
}

}  // namespace rankhash
