#pragma once

#include <cstdint>
#include <limits>
#include <numeric>

#include "basisorder/error.hpp"

namespace basisorder {

__extension__ typedef __int128 int128;

}  // namespace basisorder

namespace basisorder::checked {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("u64 addition overflow");
  return r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("u64 multiplication overflow");
  return r;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
  if (b > a) throw OverflowError("u64 subtraction underflow");
  return a - b;
}

inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return mul(a / std::gcd(a, b), b);
}

inline std::int64_t narrow(int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("value does not fit in i64");
  return static_cast<std::int64_t>(v);
}

}  // namespace basisorder::checked
