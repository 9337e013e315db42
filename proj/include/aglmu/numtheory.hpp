#pragma once

// Small-integer number theory by trial division. Only q-1 and similar
// small values ever pass through here.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "aglmu/error.hpp"

namespace aglmu::nt {

using u64 = std::uint64_t;

inline bool is_prime(u64 x) {
  if (x < 2) return false;
  for (u64 f = 2; f * f <= x; ++f)
    if (x % f == 0) return false;
  return true;
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 x) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 f = 2; f * f <= x; ++f) {
    if (x % f != 0) continue;
    unsigned e = 0;
    while (x % f == 0) {
      x /= f;
      ++e;
    }
    out.emplace_back(f, e);
  }
  if (x > 1) out.emplace_back(x, 1U);
  return out;
}

inline std::vector<u64> prime_divisors(u64 x) {
  std::vector<u64> out;
  for (auto [prime, e] : factorize(x)) out.push_back(prime);
  return out;
}

/// All positive divisors in increasing order.
inline std::vector<u64> divisors(u64 x) {
  std::vector<u64> out{1};
  for (auto [prime, e] : factorize(x)) {
    const auto count = out.size();
    u64 pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= prime;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// base^exp, or nullopt on u64 overflow.
inline std::optional<u64> checked_pow(u64 base, u64 exp) {
  u64 result = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<u64>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Least k >= 1 with a^k = 1 (mod m); requires gcd(a, m) = 1. Returns 1 when m = 1.
inline u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  u64 k = 1;
  u64 x = a % m;
  while (x != 1) {
    x = mulmod(x, a, m);
    ++k;
  }
  return k;
}

/// If x = p^k for a prime p, returns (p, k).
inline std::optional<std::pair<u64, unsigned>> prime_power(u64 x) {
  if (x < 2) return std::nullopt;
  auto f = factorize(x);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

}  // namespace aglmu::nt
