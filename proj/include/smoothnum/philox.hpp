#pragma once

#include <array>
#include <cstdint>

namespace smoothnum {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds: a bijection of the counter for each key.
inline PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    c = {std::uint32_t(p1 >> 32) ^ c[1] ^ k[0], std::uint32_t(p1),
         std::uint32_t(p0 >> 32) ^ c[3] ^ k[1], std::uint32_t(p0)};
    k[0] += 0x9E3779B9u;
    k[1] += 0xBB67AE85u;
  }
  return c;
}

/// cos and sin at the multiples of 2 pi / 4096.
struct TurnTable {
  static constexpr int kBits = 12;
  static constexpr int kLowBits = 32 - kBits;
  double cos_v[1 << kBits];
  double sin_v[1 << kBits];
};

const TurnTable& turn_table();

/// cos(2 pi p / 2^32), accurate to a few ulp.
inline double turn_cos(const TurnTable& t, std::uint32_t p) {
  constexpr double kTurn = 6.283185307179586476925 / 4294967296.0;
  std::uint32_t hi = p >> TurnTable::kLowBits;
  // |b| < 2 pi / 4096, where these truncated series are exact to double precision
  double b = double(p & ((1u << TurnTable::kLowBits) - 1)) * kTurn;
  double b2 = b * b;
  double cb_minus_1 = -b2 * (0.5 - b2 * (1.0 / 24));
  double sb = b * (1 - b2 * (1.0 / 6 - b2 * (1.0 / 120)));
  return t.cos_v[hi] + (t.cos_v[hi] * cb_minus_1 - t.sin_v[hi] * sb);
}

inline double turn_cos(std::uint32_t p) { return turn_cos(turn_table(), p); }

}  // namespace smoothnum
