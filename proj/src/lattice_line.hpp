#pragma once

// Walks the lattice points (n, r) on a line c r = a n + b that lie inside the
// parabola r^2 <= K n. Used by every "sum over n, r with a linear constraint"
// formula.

#include "fourpoly/checked.hpp"

namespace fourpoly::detail {

/// Calls f(n, r) for n = first, first + step, ... whenever c | (a n + b) and
/// K n - r^2 >= 0. Stops once g(n) = (a n + b)^2 - K c^2 n is positive and
/// increasing: g is a convex quadratic, so it stays positive from there on.
/// Returns the last n examined.
template <class F>
i64 for_each_on_line(i64 a, i64 b, i64 c, i64 K, i64 first, i64 step, F&& f) {
  const i64 kc2 = checked::mul(K, checked::mul(c, c));
  for (i64 n = first;; n += step) {
    const i64 num = checked::add(checked::mul(a, n), b);
    const i64 g = checked::sub(checked::mul(num, num), checked::mul(kc2, n));
    if (g > 0 && checked::sub(checked::mul(2 * a, num), kc2) > 0) return n;
    if (num % c != 0) continue;
    const i64 r = num / c;
    const i64 disc = checked::sub(checked::mul(K, n), checked::mul(r, r));
    if (disc >= 0) f(n, r);
  }
}

}  // namespace fourpoly::detail
