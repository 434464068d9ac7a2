#pragma once

// Truncated bivariate q/zeta expansions with exact Gaussian-integer
// coefficients.
//
// A monomial is q^(n24/24) * zeta^(r2/2). Every series carries q_max24, the
// largest n24 up to which it is complete: all monomials with n24 <= q_max24 are
// present (zero coefficients are never stored), nothing beyond it is known.
// Operations propagate the tightest such bound so that comparisons never
// silently run into a truncation hole.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fourpoly/checked.hpp"

namespace fourpoly {

struct GaussInt {
  i64 re = 0;
  i64 im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(i64 real) : re(real) {}  // NOLINT(google-explicit-constructor)
  constexpr GaussInt(i64 real, i64 imag) : re(real), im(imag) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_unit() const;
  GaussInt conj() const { return {re, checked::neg(im)}; }

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

GaussInt operator+(GaussInt a, GaussInt b);
GaussInt operator-(GaussInt a, GaussInt b);
GaussInt operator-(GaussInt a);
GaussInt operator*(GaussInt a, GaussInt b);
inline GaussInt& operator+=(GaussInt& a, GaussInt b) { return a = a + b; }
inline GaussInt& operator-=(GaussInt& a, GaussInt b) { return a = a - b; }
std::ostream& operator<<(std::ostream& os, GaussInt z);
std::string to_string(GaussInt z);

/// i^k for any integer k.
GaussInt i_power(i64 k);

/// Rational num/den in lowest terms with den > 0, used for Jacobi indices and
/// linear-combination weights.
struct Ratio {
  i64 num = 0;
  i64 den = 1;

  static Ratio of(i64 num, i64 den = 1);
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

Ratio operator+(Ratio a, Ratio b);
Ratio operator*(Ratio a, Ratio b);
bool operator<(Ratio a, Ratio b);

struct Term {
  i64 n24;
  i64 r2;
  GaussInt c;

  friend bool operator==(const Term&, const Term&) = default;
};

class QZSeries {
 public:
  /// The zero series, complete through q_max24.
  explicit QZSeries(i64 q_max24) : q_max24_(q_max24) {}

  /// Sorts, merges duplicate keys, drops zeros and everything beyond q_max24.
  /// `index` is an optional holomorphy bound t: every stored monomial (and
  /// every monomial beyond the truncation) satisfies R^2 <= 4 t N, with
  /// N = n24/24 and R = r2/2.
  static QZSeries from_terms(std::vector<Term> terms, i64 q_max24,
                             std::optional<Ratio> index = std::nullopt);

  /// 1 * q^0 zeta^0.
  static QZSeries one(i64 q_max24);

  i64 q_max24() const { return q_max24_; }
  std::span<const Term> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::optional<Ratio>& index() const { return index_; }

  /// Smallest stored n24, or q_max24 + 1 for the zero series.
  i64 low24() const;

  /// Throws TruncationError beyond q_max24.
  GaussInt coeff(i64 n24, i64 r2) const;

  /// True when every key has integer q- and zeta-exponents.
  bool integral() const;
  /// True when all coefficients are real.
  bool real() const;

  friend bool operator==(const QZSeries&, const QZSeries&) = default;

 private:
  i64 q_max24_;
  std::vector<Term> terms_;
  std::optional<Ratio> index_;
};

/// theta(a tau, b z) from the sum form
///   q^(1/8) zeta^(1/2) sum_n (-1)^n q^(n(n+1)/2) zeta^n.
QZSeries theta(i64 a, i64 b, i64 q_max24);

struct EtaFactor {
  i64 scale;     ///< eta(scale * tau)
  i64 exponent;  ///< may be negative
};

/// prod_j eta(a_j tau)^(e_j), complete through q_max24.
QZSeries eta_product(std::span<const EtaFactor> factors, i64 q_max24);

/// Product, parallel over output q-rows.
QZSeries mul(const QZSeries& a, const QZSeries& b);
/// Term-by-term reference product; same result as mul.
QZSeries mul_serial(const QZSeries& a, const QZSeries& b);

QZSeries pow(const QZSeries& a, unsigned k);

struct LinearTerm {
  Ratio weight;
  std::reference_wrapper<const QZSeries> series;
};

/// scale * sum_j weight_j * series_j. Each weight * scale must be an
/// integer, otherwise ScaleMismatchError.
QZSeries linear_combine(std::span<const LinearTerm> terms, i64 scale);

/// Multiplicative inverse; the lowest q-row must be a single unit term at r2=0.
QZSeries invert(const QZSeries& a);

/// sum_r R^k f(n, R) as a pure q-series (the k-th z-derivative at z = 0 divided
/// by (2 pi i)^k). k must be even; every zeta exponent must be integral.
QZSeries z_moment(const QZSeries& a, unsigned k);

/// zeta -> exp(2 pi i beta) q^alpha with beta = quarter_turns / 4. Requires a
/// known holomorphy index when alpha != 0, which determines how far the
/// result is complete.
QZSeries substitute_z(const QZSeries& a, i64 alpha, i64 quarter_turns);

/// Smallest source truncation for which substitute_z(., alpha, .) of a series
/// with holomorphy index `index` is complete through target24.
i64 substitution_source_bound(Ratio index, i64 alpha, i64 target24);

/// Hecke-type V_l on Fourier coefficients:
///   (f|V_l)(n, r) = sum_{a | (n, r, l), (a, level) = 1} a^(k-1) f(n l / a^2, r / a).
QZSeries vl_action(const QZSeries& a, i64 l, i64 weight, i64 level);

/// tau -> c tau.
QZSeries rescale_tau(const QZSeries& a, i64 c);
/// z -> l z.
QZSeries scale_z(const QZSeries& a, i64 l);
/// Multiply by q^(d24/24).
QZSeries shift_q(const QZSeries& a, i64 d24);
QZSeries truncate(const QZSeries& a, i64 q_max24);
QZSeries negate(const QZSeries& a);
QZSeries scale_by(const QZSeries& a, i64 factor);

/// Text dump: "n24 r2 re im" per line, sorted, LF-terminated.
void dump(std::ostream& os, const QZSeries& a);
std::string dump(const QZSeries& a);

}  // namespace fourpoly
