#include "rankhash/params.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "rankhash/error.hpp"

namespace rankhash {

void require_finite(std::span<const double> values) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j])) {
      throw DataError("feature component " + std::to_string(j) + " is not finite");
    }
  }
}

void HashParams::validate() const {
  if (n == 0) throw ParameterError("n must be positive");
  if (m == 0) throw ParameterError("m must be positive");
  if (p == 0) throw ParameterError("p must be at least 1");
  if (k < 2 || k > n) {
    throw ParameterError("window size k=" + std::to_string(k) + " must satisfy 1 < k <= n=" + std::to_string(n));
  }
  if (n > 0xffffffffULL) throw ParameterError("n does not fit in 32 bits");
}

std::uint64_t HashParams::fingerprint() const noexcept {
  // FNV-1a over the little-endian encoding of a version tag and each field.
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  feed(1);
  feed(n);
  feed(m);
  feed(k);
  feed(p);
  feed(master_seed);
  return h;
}

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xfU];
    value >>= 4;
  }
  return out;
}

std::uint64_t from_hex(const std::string& text) {
  std::uint64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value, 16);
  if (ec != std::errc{} || ptr != last || text.empty()) throw DataError("bad hex value '" + text + "'");
  return value;
}

}  // namespace rankhash
