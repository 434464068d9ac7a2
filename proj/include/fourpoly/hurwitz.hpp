#pragma once

// Hurwitz class numbers, stored as exact integers scaled by 12.
//
// Every accessor follows the extended-domain convention: a negative argument or
// one congruent to 1 or 2 mod 4 yields 0, so callers can sum over lattice
// ranges without side conditions. Arguments above the table bound throw
// OutOfTableError.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "fourpoly/checked.hpp"
#include "fourpoly/qseries.hpp"

namespace fourpoly {

/// 12 * H(D) (or 12 * H^(2), 12 * H^(3)); always an integer.
using ScaledH = i64;

class ClassTable {
 public:
  static constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 26;

  /// One batched sweep over reduced forms (a, b, c), |b| <= a <= c, with
  /// 4ac - b^2 <= d_max. Throws ResourceError above max_entries.
  explicit ClassTable(i64 d_max, std::size_t max_entries = kDefaultMaxEntries);

  /// Adopts precomputed values after checking the table invariants
  /// (CacheError on violation).
  static ClassTable from_values(std::vector<ScaledH> values);

  i64 d_max() const { return static_cast<i64>(values_.size()) - 1; }
  std::span<const ScaledH> values() const { return values_; }

  /// 12 H(D); 12 H(0) = -1.
  ScaledH h(i64 D) const;
  /// 12 H^(2)(D) = 12 H(4D) - 24 H(D) on D = 0, 3 mod 4; needs 4D <= d_max.
  ScaledH h2(i64 D) const;
  /// 12 H(D / 4^a) (1 - (-D / 4^a | 2)) with a maximal; D > 0, D = 0, 3 mod 4.
  ScaledH h2_alt(i64 D) const;
  /// 12 H^(3)(D) = 12 H(9D) - 36 H(D) on D = 0, 3 mod 4; needs 9D <= d_max.
  ScaledH h3(i64 D) const;

 private:
  ClassTable() = default;
  std::vector<ScaledH> values_;
};

/// Kronecker symbol (d | 2).
int kronecker2(i64 d);

/// 12 H(D) for a single D by direct enumeration of reduced forms of
/// discriminant -D. Independent of the batched sweep.
ScaledH hurwitz_direct(i64 D);

/// Returns a description of the first violated table invariant, or an empty
/// string when the values are consistent.
std::string check_table_invariants(std::span<const ScaledH> values);

/// Cache file: header "D,12H", then "D,value" per line, LF-terminated.
void write_class_table(std::ostream& os, const ClassTable& table);
/// Parses and validates (invariants plus spot recomputation of a sample of
/// entries); throws CacheError on any defect.
ClassTable read_class_table(std::istream& is);

enum class ClassSeriesKind { H, H0, H1, Hstar };

/// Class-number Jacobi series through q^q_max, coefficients as printed at
/// scale 12:
///   H:     12 H^(2)(4n - r^2) q^n zeta^r
///   H0:    the even-r part of H
///   H1:    24 H(4n - r^2) for odd n and odd r
///   Hstar: 12 H^(3)(4n - r^2) q^n zeta^r (global scale 12)
QZSeries class_jacobi_series(const ClassTable& table, ClassSeriesKind kind, i64 q_max);

/// Table size needed by class_jacobi_series(kind, q_max).
i64 class_series_table_need(ClassSeriesKind kind, i64 q_max);

}  // namespace fourpoly
