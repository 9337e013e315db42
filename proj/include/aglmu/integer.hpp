#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace aglmu {

/// Arbitrary precision signed integer; Möbius values grow like r^(l choose 2).
using Integer = boost::multiprecision::cpp_int;

using u64 = std::uint64_t;

inline Integer ipow(const Integer& base, u64 exp) {
  Integer result = 1;
  Integer b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp > 0) b *= b;
  }
  return result;
}

inline bool fits_int64(const Integer& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_decimal(const Integer& v) { return v.str(); }

}  // namespace aglmu
