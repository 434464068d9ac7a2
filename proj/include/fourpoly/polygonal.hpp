#pragma once

// Generalized polygonal numbers and the counting functions built on them.
//
// Two parameterizations meet here. `order` is the number of polygon sides
// (>= 3); the class-number formulas use m = order - 2 (>= 1) because their
// generating functions are theta(m tau, 1/2 - tau)^4 and friends.

#include <span>
#include <vector>

#include "fourpoly/hurwitz.hpp"

namespace fourpoly {

/// Number of integer solutions of some counting problem.
using RepCount = i64;

/// p_order(ell) = ((order - 2) ell^2 - (order - 4) ell) / 2 for any integer ell.
i64 pgon(i64 order, i64 ell);

/// Largest |ell| that can satisfy coeff * p_order(ell) <= N.
i64 pgon_search_bound(i64 order, i64 coeff, i64 N);

/// #{ (l_1..l_t) in Z^t : sum coeffs[i] * p_order(l_i) = N }, by direct tuple
/// enumeration.
RepCount enum_reps(i64 order, std::span<const i64> coeffs, i64 N);

/// enum_reps for every N in [0, n_max] at once (parallel convolution of value
/// histograms).
std::vector<RepCount> rep_count_table(i64 order, std::span<const i64> coeffs, i64 n_max);

/// Multisets of t generalized polygonal VALUES summing to N.
RepCount unordered_reps(i64 order, i64 count, i64 N);
/// unordered_reps(8, 4, N).
RepCount octagonal_unordered(i64 N);

/// 8 * sum_{d | N, 4 !| d} d.
RepCount jacobi_r44(i64 N);

struct FormulaTerm {
  i64 n;
  i64 r;
  ScaledH value;  ///< 12 H^(2)(4n - r^2) for even r, 12 H(4n - r^2) for odd r
};

/// Individual summands of the four-polygonal class-number formula for
/// R_{m+2,4}(N): odd n, r = m(n-1)/2 + 2 - N, 4n - r^2 >= 0.
std::vector<FormulaTerm> r4_formula_terms(const ClassTable& table, i64 m, i64 N);
RepCount r4_formula(const ClassTable& table, i64 m, i64 N);
/// Class-table bound needed by r4_formula(m, N).
i64 r4_formula_table_need(i64 m, i64 N);

/// #{x^2 + y^2 + z^2 = N} = 12 H^(2)(4N).
RepCount three_square_count(const ClassTable& table, i64 N);
/// #{x^2 + y^2 + 2 z^2 = N} = 4 H^(2)(8N) + 8 H^(2)(2N).
RepCount xxyy2z_count(const ClassTable& table, i64 N);

/// R*_{m+2}(N) = #{p(l1) + p(l2) + 3 p(l3) + 3 p(l4) = N} via class numbers
/// H^(3).
RepCount rstar_formula(const ClassTable& table, i64 m, i64 N);
i64 rstar_formula_table_need(i64 m, i64 N);

}  // namespace fourpoly
