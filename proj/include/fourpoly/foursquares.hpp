#pragma once

// Vectors of Z^4 of fixed norm, their orbits under signed permutations, and the
// pair counts rho(n, r, m) = #{u, v : |u|^2 = n, |v|^2 = m, <u, v> = r}.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "fourpoly/hurwitz.hpp"

namespace fourpoly {

using Vec4 = std::array<i64, 4>;
using RhoCount = i64;

struct OrbitInfo {
  Vec4 rep;  ///< absolute values sorted descending
  i64 size;  ///< number of signed permutations of rep

  friend bool operator==(const OrbitInfo&, const OrbitInfo&) = default;
};

/// Signed-permutation orbits on {v : |v|^2 = m}, ordered lexicographically by
/// representative. The orbit count is t_m.
std::vector<OrbitInfo> sphere_orbits(i64 m);

/// Explicit orbit of v under the 384 signed permutations (deduplicated).
std::vector<Vec4> orbit_elements(const Vec4& v);

/// Every u in Z^4 with |u|^2 = n, lexicographic order.
std::vector<Vec4> sphere_points(i64 n);

/// #{u : |u|^2 = n, <v, u> = r}.
i64 rho_v(const Vec4& v, i64 n, i64 r);

/// sum over orbits of size * rho_v(rep, n, r), by enumeration.
RhoCount rho_enum(i64 n, i64 r, i64 m);

/// rho(n, r, m) for every 1 <= n <= n_max and every r, computed in one parallel
/// pass over n. at() returns 0 outside the stored range (Cauchy-Schwarz).
class RhoTable {
 public:
  RhoTable(i64 n_max, i64 m);
  i64 n_max() const { return n_max_; }
  i64 m() const { return m_; }
  RhoCount at(i64 n, i64 r) const;

 private:
  i64 n_max_;
  i64 m_;
  i64 r_bound_;
  std::vector<RhoCount> counts_;
};

/// Closed form for rho(n, r, m) through class numbers H^(2); (n, m) and
/// (n, r, m) are gcd's with zeros ignored.
RhoCount rho_formula(const ClassTable& table, i64 n, i64 r, i64 m);
i64 rho_formula_table_need(i64 n, i64 m);

struct LemmaResult {
  std::optional<i64> s;  ///< smallest admissible s, if any within s_max
  bool definitive;       ///< true when 16^(s_max+1) > D, so "none" is final
};

/// Smallest s <= s_max with D - 16^s >= 0 and H^(2)(4(D - 16^s)) > 0.
LemmaResult lemma_search(const ClassTable& table, i64 D, i64 s_max);

struct Witness {
  i64 n, s, x, y, z, w;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct NotFound {
  i64 n;
  bool exhaustive;  ///< 16^(s_max+1) > |v|^2 n, so no larger s can work
  friend bool operator==(const NotFound&, const NotFound&) = default;
};

struct SunReport {
  Vec4 v;
  i64 n_max;
  i64 s_max;
  std::vector<Witness> witnesses;  ///< ascending n
  std::vector<NotFound> not_found;  ///< ascending n
};

/// Witness with |u|^2 = n and <v, u> = 4^s for the smallest such s <= s_max;
/// among those the lexicographically first u.
std::optional<Witness> sun_witness(const Vec4& v, i64 n, i64 s_max);

/// Same answers as sun_witness for every 1 <= n <= n_max, parallel over n.
/// Splits u = (x, y | z, w) and looks the (z, w) half up by (norm, dot).
SunReport sun_verify(const Vec4& v, i64 n_max, i64 s_max);

/// The vectors for which a witness always exists.
std::span<const Vec4> sun_part1_vectors();
/// The vectors that fail exactly at n = 2^(4k+3) / |v|^2.
std::span<const Vec4> sun_part2_vectors();

}  // namespace fourpoly
