#include <gtest/gtest.h>

#include "rankhash/codec.hpp"
#include "rankhash/error.hpp"
#include "rankhash/rng.hpp"

using namespace rankhash;

TEST(Codec, ParamsSeedIsDecimalString) {
  const HashParams params{299, 600, 128, 2, 18446744073709551615ULL};
  const auto j = to_json(params);
  EXPECT_EQ(j.at("master_seed"), "18446744073709551615");
  EXPECT_EQ(params_from_json(j), params);
  EXPECT_EQ(params_from_json(nlohmann::json::parse(R"({"n":3,"m":1,"k":2,"p":1,"master_seed":7})")).master_seed, 7u);
  EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"n":3,"m":1,"k":2,"p":1,"master_seed":"x7"})")),
               DataError);
  EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"n":3,"m":1,"p":1,"master_seed":"7"})")), DataError);
}

TEST(Codec, IndexBits) {
  EXPECT_EQ(index_bits(2), 1u);
  EXPECT_EQ(index_bits(3), 2u);
  EXPECT_EQ(index_bits(4), 2u);
  EXPECT_EQ(index_bits(5), 3u);
  EXPECT_EQ(index_bits(128), 7u);
  EXPECT_EQ(index_bits(129), 8u);
  EXPECT_EQ(index_bits(250), 8u);
}

TEST(Codec, BinaryLayout) {
  const HashedCode code{{1, 2, 3, 4}, 0x0102030405060708ULL};
  const auto bytes = encode_binary(code, 4);
  const std::vector<std::uint8_t> expected{'R', 'K', 'H', 'C', 1,    4,    0,    0,    0,    4,    0,
                                           0,   0,   0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01,
                                           // t-1 = 0,1,2,3 at 2 bits each, LSB first: 0b11100100
                                           0xe4};
  EXPECT_EQ(bytes, expected);
}

TEST(Codec, RoundTripProperty) {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const auto k = static_cast<std::uint32_t>(2 + rng.bounded(300));
    HashedCode code;
    code.params_fingerprint = rng.next();
    code.indices.resize(rng.bounded(700));
    for (auto& t : code.indices) t = static_cast<std::uint32_t>(1 + rng.bounded(k));
    const auto bytes = encode_binary(code, k);
    EXPECT_EQ(bytes.size(), 21 + (code.size() * index_bits(k) + 7) / 8);
    const auto decoded = decode_binary(bytes);
    EXPECT_EQ(decoded.code, code);
    EXPECT_EQ(decoded.k, k);
    EXPECT_EQ(code_from_json(to_json(code)), code);
  }
}

TEST(Codec, DecodeRejectsCorruption) {
  const HashedCode code{{1, 3, 2}, 42};
  auto bytes = encode_binary(code, 3);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_binary(bad_magic), DataError);
  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(decode_binary(bad_version), DataError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_binary(truncated), DataError);
  auto out_of_range = bytes;
  out_of_range.back() = 0xff;  // t-1 = 3 at k = 3
  EXPECT_THROW(decode_binary(out_of_range), DataError);
  EXPECT_THROW(encode_binary(HashedCode{{4}, 0}, 3), ParameterError);
}
