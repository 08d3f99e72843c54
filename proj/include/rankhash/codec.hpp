#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "rankhash/hash.hpp"
#include "rankhash/params.hpp"

namespace rankhash {

// JSON: HashParams as {n, m, k, p, master_seed} with master_seed a decimal
// string. Numeric master_seed is accepted on input.
nlohmann::json to_json(const HashParams& params);
HashParams params_from_json(const nlohmann::json& j);

// JSON: {"indices": [...], "params_fingerprint": "<16 hex digits>"}
nlohmann::json to_json(const HashedCode& code);
HashedCode code_from_json(const nlohmann::json& j);

/// Bits per packed index: ceil(log2 k).
[[nodiscard]] unsigned index_bits(std::uint32_t k) noexcept;

/// Compact form: "RKHC", version byte, m (u32 LE), k (u32 LE), fingerprint
/// (u64 LE), then each t-1 packed LSB-first at index_bits(k) bits.
std::vector<std::uint8_t> encode_binary(const HashedCode& code, std::uint32_t k);

struct DecodedCode {
  HashedCode code;
  std::uint32_t k = 0;
};

/// Throws DataError on bad magic, unknown version, truncation or an index
/// outside [1, k].
DecodedCode decode_binary(std::span<const std::uint8_t> bytes);

inline constexpr std::uint8_t kBinaryVersion = 1;

}  // namespace rankhash
