#include "rankhash/codec.hpp"

#include <bit>
#include <string>

#include "rankhash/error.hpp"

namespace rankhash {

using nlohmann::json;

json to_json(const HashParams& params) {
  return json{{"n", params.n},
              {"m", params.m},
              {"k", params.k},
              {"p", params.p},
              {"master_seed", std::to_string(params.master_seed)}};
}

namespace {

std::uint64_t seed_from_json(const json& value) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(text, &used, 10);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
      throw DataError("master_seed '" + text + "' is not a decimal 64-bit integer");
    }
    return seed;
  }
  throw DataError("master_seed must be a decimal string");
}

std::size_t size_field(const json& j, const char* name) {
  if (!j.contains(name)) throw DataError(std::string("missing field '") + name + "'");
  const auto& v = j.at(name);
  if (!v.is_number_unsigned()) throw DataError(std::string("field '") + name + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

HashParams params_from_json(const json& j) {
  if (!j.is_object()) throw DataError("params must be a JSON object");
  HashParams params;
  params.n = size_field(j, "n");
  params.m = size_field(j, "m");
  params.k = size_field(j, "k");
  params.p = size_field(j, "p");
  if (!j.contains("master_seed")) throw DataError("missing field 'master_seed'");
  params.master_seed = seed_from_json(j.at("master_seed"));
  return params;
}

json to_json(const HashedCode& code) {
  return json{{"indices", code.indices}, {"params_fingerprint", to_hex(code.params_fingerprint)}};
}

HashedCode code_from_json(const json& j) {
  if (!j.is_object() || !j.contains("indices") || !j.contains("params_fingerprint")) {
    throw DataError("hashed code needs 'indices' and 'params_fingerprint'");
  }
  HashedCode code;
  try {
    code.indices = j.at("indices").get<std::vector<std::uint32_t>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad indices: ") + e.what());
  }
  code.params_fingerprint = from_hex(j.at("params_fingerprint").get<std::string>());
  return code;
}

unsigned index_bits(std::uint32_t k) noexcept {
  if (k <= 1) return 1;
  return static_cast<unsigned>(std::bit_width(k - 1));
}

namespace {

constexpr std::uint8_t kMagic[4] = {'R', 'K', 'H', 'C'};
constexpr std::size_t kHeaderSize = 4 + 1 + 4 + 4 + 8;

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int b = 0; b < bytes; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(in[at + static_cast<std::size_t>(b)]) << (8 * b);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_binary(const HashedCode& code, std::uint32_t k) {
  if (k < 2) throw ParameterError("binary form needs k >= 2");
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kBinaryVersion);
  put_le(out, code.indices.size(), 4);
  put_le(out, k, 4);
  put_le(out, code.params_fingerprint, 8);

  const unsigned bits = index_bits(k);
  std::uint64_t acc = 0;
  unsigned filled = 0;
  for (const auto t : code.indices) {
    if (t < 1 || t > k) throw ParameterError("index " + std::to_string(t) + " outside [1, k]");
    acc |= static_cast<std::uint64_t>(t - 1) << filled;
    filled += bits;
    while (filled >= 8) {
      out.push_back(static_cast<std::uint8_t>(acc));
      acc >>= 8;
      filled -= 8;
    }
  }
  if (filled > 0) out.push_back(static_cast<std::uint8_t>(acc));
  return out;
}

DecodedCode decode_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw DataError("binary code truncated (header)");
  for (std::size_t b = 0; b < 4; ++b) {
    if (bytes[b] != kMagic[b]) throw DataError("binary code has bad magic");
  }
  if (bytes[4] != kBinaryVersion) throw DataError("unsupported binary code version " + std::to_string(bytes[4]));

  DecodedCode out;
  const auto m = static_cast<std::size_t>(get_le(bytes, 5, 4));
  out.k = static_cast<std::uint32_t>(get_le(bytes, 9, 4));
  out.code.params_fingerprint = get_le(bytes, 13, 8);
  if (out.k < 2) throw DataError("binary code has k < 2");

  const unsigned bits = index_bits(out.k);
  const std::size_t payload = (m * bits + 7) / 8;
  if (bytes.size() != kHeaderSize + payload) throw DataError("binary code length does not match its header");

  out.code.indices.resize(m);
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::size_t bitpos = 0;
  for (std::size_t i = 0; i < m; ++i, bitpos += bits) {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < bits; ++b) {
      const std::size_t at = bitpos + b;
      v |= static_cast<std::uint64_t>((bytes[kHeaderSize + at / 8] >> (at % 8)) & 1U) << b;
    }
    v &= mask;
    if (v + 1 > out.k) throw DataError("binary code index outside [1, k]");
    out.code.indices[i] = static_cast<std::uint32_t>(v + 1);
  }
  return out;
}

}  // namespace rankhash
