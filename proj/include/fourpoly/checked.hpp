#pragma once

// Overflow-checked 64-bit integer helpers. Every accumulation in the library
// goes through these; a wraparound throws OverflowError instead of producing
// a wrong count.

#include <cstdint>
#include <numeric>

#include "fourpoly/error.hpp"

namespace fourpoly {

using i64 = std::int64_t;

namespace checked {

inline i64 add(i64 a, i64 b) {
  i64 out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline i64 sub(i64 a, i64 b) {
  i64 out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
  return out;
}

inline i64 mul(i64 a, i64 b) {
  i64 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

inline i64 neg(i64 a) { return sub(0, a); }

inline i64 pow(i64 base, unsigned exp) {
  i64 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = mul(out, base);
  return out;
}

}  // namespace checked

/// floor(a / b) for b > 0.
constexpr i64 floor_div(i64 a, i64 b) {
  const i64 q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// ceil(a / b) for b > 0.
constexpr i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

/// Mathematical residue in [0, m).
constexpr i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// floor(sqrt(n)) for n >= 0, exact.
inline i64 isqrt(i64 n) {
  if (n < 0) throw DomainError("isqrt of negative number");
  i64 x = static_cast<i64>(__builtin_sqrt(static_cast<double>(n)));
  while (x > 0 && x > n / x) --x;
  while ((x + 1) <= n / (x + 1)) ++x;
  return x;
}

/// ceil(sqrt(n)) for n >= 0.
inline i64 isqrt_ceil(i64 n) {
  const i64 x = isqrt(n);
  return x * x == n ? x : x + 1;
}

inline bool is_square(i64 n) {
  if (n < 0) return false;
  const i64 x = isqrt(n);
  return x * x == n;
}

/// gcd over several values; zeros are ignored, gcd of all zeros is 0.
inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

}  // namespace fourpoly
