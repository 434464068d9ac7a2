#include "fourpoly/qseries.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "parallel.hpp"

namespace fourpoly {

// ---------------------------------------------------------------------------
// GaussInt / Ratio

bool GaussInt::is_unit() const {
  return (im == 0 && (re == 1 || re == -1)) || (re == 0 && (im == 1 || im == -1));
}

GaussInt operator+(GaussInt a, GaussInt b) { return {checked::add(a.re, b.re), checked::add(a.im, b.im)}; }
GaussInt operator-(GaussInt a, GaussInt b) { return {checked::sub(a.re, b.re), checked::sub(a.im, b.im)}; }
GaussInt operator-(GaussInt a) { return {checked::neg(a.re), checked::neg(a.im)}; }

GaussInt operator*(GaussInt a, GaussInt b) {
  if (a.im == 0 && b.im == 0) return {checked::mul(a.re, b.re), 0};
  return {checked::sub(checked::mul(a.re, b.re), checked::mul(a.im, b.im)),
          checked::add(checked::mul(a.re, b.im), checked::mul(a.im, b.re))};
}

std::string to_string(GaussInt z) {
  if (z.im == 0) return std::to_string(z.re);
  std::string s = std::to_string(z.re);
  s += z.im < 0 ? "-" : "+";
  s += std::to_string(z.im < 0 ? -z.im : z.im);
  s += "i";
  return s;
}

std::ostream& operator<<(std::ostream& os, GaussInt z) { return os << to_string(z); }

GaussInt i_power(i64 k) {
  switch (mod(k, 4)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

Ratio Ratio::of(i64 num, i64 den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = checked::neg(num);
    den = checked::neg(den);
  }
  const i64 g = std::gcd(num, den);
  return {num / g, den / g};
}

Ratio operator+(Ratio a, Ratio b) {
  return Ratio::of(checked::add(checked::mul(a.num, b.den), checked::mul(b.num, a.den)),
                   checked::mul(a.den, b.den));
}

Ratio operator*(Ratio a, Ratio b) {
  return Ratio::of(checked::mul(a.num, b.num), checked::mul(a.den, b.den));
}

bool operator<(Ratio a, Ratio b) { return checked::mul(a.num, b.den) < checked::mul(b.num, a.den); }

// ---------------------------------------------------------------------------
// QZSeries

namespace {

bool key_less(const Term& x, const Term& y) {
  return x.n24 != y.n24 ? x.n24 < y.n24 : x.r2 < y.r2;
}

struct Row {
  i64 n24;
  std::size_t begin;
  std::size_t end;
};

std::vector<Row> rows_of(std::span<const Term> terms) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j].n24 == terms[i].n24) ++j;
    rows.push_back({terms[i].n24, i, j});
    i = j;
  }
  return rows;
}

std::optional<Ratio> sum_index(const QZSeries& a, const QZSeries& b) {
  if (!a.index() || !b.index()) return std::nullopt;
  return *a.index() + *b.index();
}

}  // namespace

QZSeries QZSeries::from_terms(std::vector<Term> terms, i64 q_max24, std::optional<Ratio> index) {
  std::erase_if(terms, [&](const Term& t) { return t.n24 > q_max24; });
  std::sort(terms.begin(), terms.end(), key_less);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().n24 == t.n24 && merged.back().r2 == t.r2) {
      merged.back().c += t.c;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.c.is_zero(); });
  QZSeries s(q_max24);
  s.terms_ = std::move(merged);
  s.index_ = index;
  return s;
}

QZSeries QZSeries::one(i64 q_max24) {
  return from_terms({{0, 0, 1}}, q_max24, Ratio{0, 1});
}

i64 QZSeries::low24() const { return terms_.empty() ? q_max24_ + 1 : terms_.front().n24; }

GaussInt QZSeries::coeff(i64 n24, i64 r2) const {
  if (n24 > q_max24_) {
    throw TruncationError("coefficient at n24=" + std::to_string(n24) +
                          " beyond truncation q_max24=" + std::to_string(q_max24_));
  }
  const Term probe{n24, r2, {}};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, key_less);
  if (it != terms_.end() && it->n24 == n24 && it->r2 == r2) return it->c;
  return {};
}

bool QZSeries::integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return mod(t.n24, 24) == 0 && mod(t.r2, 2) == 0; });
}

bool QZSeries::real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.c.im == 0; });
}

// ---------------------------------------------------------------------------
// Generators

QZSeries theta(i64 a, i64 b, i64 q_max24) {
  if (a <= 0 || b <= 0) throw DomainError("theta(a, b) needs positive a and b");
  if (q_max24 < 3 * a) {
    throw TruncationError("theta truncation q_max24=" + std::to_string(q_max24) + " holds no term");
  }
  // n and -1-n share the q-exponent 3a + 12a n(n+1); the zeta exponents are
  // opposite and the signs differ.
  std::vector<Term> terms;
  for (i64 k = 0;; ++k) {
    const i64 n24 = checked::add(3 * a, checked::mul(12 * a, checked::mul(k, k + 1)));
    if (n24 > q_max24) break;
    const i64 r2 = checked::mul(b, 2 * k + 1);
    const i64 sign = (k % 2 == 0) ? 1 : -1;
    terms.push_back({n24, r2, sign});
    terms.push_back({n24, -r2, -sign});
  }
  return QZSeries::from_terms(std::move(terms), q_max24, Ratio::of(checked::mul(b, b), 2 * a));
}

QZSeries eta_product(std::span<const EtaFactor> factors, i64 q_max24) {
  i64 lead24 = 0;
  for (const auto& f : factors) {
    if (f.scale <= 0) throw DomainError("eta scale must be positive");
    lead24 = checked::add(lead24, checked::mul(f.scale, f.exponent));
  }
  if (q_max24 < lead24) {
    throw TruncationError("eta product leads with n24=" + std::to_string(lead24) +
                          " beyond q_max24=" + std::to_string(q_max24));
  }
  const i64 degree = floor_div(q_max24 - lead24, 24);

  // Dense prod (1 - x^(scale*n))^|e|, split by sign of the exponent.
  auto dense_product = [degree](std::span<const EtaFactor> fs, bool positive) {
    std::vector<i64> p(static_cast<std::size_t>(degree) + 1, 0);
    p[0] = 1;
    for (const auto& f : fs) {
      if ((f.exponent > 0) != positive || f.exponent == 0) continue;
      const i64 reps = f.exponent > 0 ? f.exponent : -f.exponent;
      for (i64 rep = 0; rep < reps; ++rep) {
        for (i64 step = f.scale; step <= degree; step += f.scale) {
          for (i64 i = degree; i >= step; --i) p[i] = checked::sub(p[i], p[i - step]);
        }
      }
    }
    return p;
  };
  auto to_series = [degree](const std::vector<i64>& p) {
    std::vector<Term> terms;
    for (i64 i = 0; i <= degree; ++i) {
      if (p[i] != 0) terms.push_back({24 * i, 0, p[i]});
    }
    return QZSeries::from_terms(std::move(terms), 24 * degree, Ratio{0, 1});
  };

  QZSeries body = to_series(dense_product(factors, true));
  const bool has_denominator =
      std::any_of(factors.begin(), factors.end(), [](const EtaFactor& f) { return f.exponent < 0; });
  if (has_denominator) body = mul(body, invert(to_series(dense_product(factors, false))));

  // Exponents only occur at lead24 + 24 j, so the shifted series is complete
  // through q_max24 itself.
  std::vector<Term> shifted(body.terms().begin(), body.terms().end());
  for (Term& t : shifted) t.n24 += lead24;
  return QZSeries::from_terms(std::move(shifted), q_max24, Ratio{0, 1});
}

// ---------------------------------------------------------------------------
// Ring operations

namespace {

i64 product_truncation(const QZSeries& a, const QZSeries& b) {
  return std::min(checked::add(a.q_max24(), b.low24()), checked::add(b.q_max24(), a.low24()));
}

}  // namespace

QZSeries mul_serial(const QZSeries& a, const QZSeries& b) {
  const i64 q = product_truncation(a, b);
  std::map<std::pair<i64, i64>, GaussInt> acc;
  for (const Term& x : a.terms()) {
    for (const Term& y : b.terms()) {
      const i64 n = checked::add(x.n24, y.n24);
      if (n > q) break;
      acc[{n, checked::add(x.r2, y.r2)}] += x.c * y.c;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [key, c] : acc) terms.push_back({key.first, key.second, c});
  return QZSeries::from_terms(std::move(terms), q, sum_index(a, b));
}

QZSeries mul(const QZSeries& a, const QZSeries& b) {
  const i64 q = product_truncation(a, b);
  if (a.empty() || b.empty()) return QZSeries::from_terms({}, q, sum_index(a, b));

  const auto ra = rows_of(a.terms());
  const auto rb = rows_of(b.terms());
  auto r_range = [](std::span<const Term> ts) {
    auto [lo, hi] = std::minmax_element(ts.begin(), ts.end(),
                                        [](const Term& x, const Term& y) { return x.r2 < y.r2; });
    return std::pair{lo->r2, hi->r2};
  };
  const auto [alo, ahi] = r_range(a.terms());
  const auto [blo, bhi] = r_range(b.terms());
  const i64 rmin = checked::add(alo, blo);
  const std::size_t width = static_cast<std::size_t>(checked::sub(checked::add(ahi, bhi), rmin) + 1);

  // Group row pairs by output q-exponent.
  std::map<i64, std::vector<std::pair<std::size_t, std::size_t>>> by_row;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const i64 n = checked::add(ra[i].n24, rb[j].n24);
      if (n > q) break;
      by_row[n].emplace_back(i, j);
    }
  }
  std::vector<std::pair<i64, std::vector<std::pair<std::size_t, std::size_t>>>> jobs(
      by_row.begin(), by_row.end());
  std::vector<std::vector<Term>> out(jobs.size());

  const auto at = a.terms();
  const auto bt = b.terms();
  detail::FirstError failure;
#pragma omp parallel
  {
    std::vector<GaussInt> buf(width);
#pragma omp for schedule(dynamic)
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      failure.run([&] {
        std::size_t lo = width, hi = 0;
        for (const auto& [i, j] : jobs[k].second) {
          for (std::size_t x = ra[i].begin; x < ra[i].end; ++x) {
            for (std::size_t y = rb[j].begin; y < rb[j].end; ++y) {
              const auto slot = static_cast<std::size_t>(at[x].r2 + bt[y].r2 - rmin);
              buf[slot] += at[x].c * bt[y].c;
              lo = std::min(lo, slot);
              hi = std::max(hi, slot);
            }
          }
        }
        for (std::size_t s = lo; s <= hi && lo < width; ++s) {
          if (!buf[s].is_zero()) out[k].push_back({jobs[k].first, static_cast<i64>(s) + rmin, buf[s]});
          buf[s] = {};
        }
      });
    }
  }
  failure.rethrow();

  std::vector<Term> terms;
  for (auto& row : out) terms.insert(terms.end(), row.begin(), row.end());
  return QZSeries::from_terms(std::move(terms), q, sum_index(a, b));
}

QZSeries pow(const QZSeries& a, unsigned k) {
  QZSeries result = QZSeries::one(a.q_max24());
  if (k == 0) return result;
  QZSeries base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1u) {
      result = first ? base : mul(result, base);
      first = false;
    }
    k >>= 1u;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

QZSeries linear_combine(std::span<const LinearTerm> terms, i64 scale) {
  if (terms.empty()) throw DomainError("linear_combine needs at least one term");
  if (scale <= 0) throw ScaleMismatchError("declared scale must be positive");
  i64 q = terms.front().series.get().q_max24();
  std::optional<Ratio> index = terms.front().series.get().index();
  std::vector<Term> all;
  for (const auto& lt : terms) {
    const QZSeries& s = lt.series.get();
    const i64 scaled = checked::mul(lt.weight.num, scale);
    if (scaled % lt.weight.den != 0) {
      throw ScaleMismatchError("weight " + std::to_string(lt.weight.num) + "/" +
                               std::to_string(lt.weight.den) + " does not clear at scale " +
                               std::to_string(scale));
    }
    const i64 factor = scaled / lt.weight.den;
    q = std::min(q, s.q_max24());
    if (index && s.index()) {
      if (*index < *s.index()) index = s.index();
    } else {
      index.reset();
    }
    for (const Term& t : s.terms()) all.push_back({t.n24, t.r2, t.c * GaussInt(factor)});
  }
  return QZSeries::from_terms(std::move(all), q, index);
}

QZSeries invert(const QZSeries& a) {
  if (a.empty()) throw NonUnitLeadingError("cannot invert the zero series");
  const auto rows = rows_of(a.terms());
  const auto lead = a.terms()[rows.front().begin];
  if (rows.front().end - rows.front().begin != 1 || lead.r2 != 0 || !lead.c.is_unit()) {
    throw NonUnitLeadingError("lowest q-row must be a single unit at zeta^0");
  }
  const i64 n0 = lead.n24;
  const GaussInt u_inv = lead.c.conj();
  const i64 limit = checked::sub(a.q_max24(), n0);  // known offsets of a / q^n0

  // b_d = -u^{-1} sum_{e > 0} a_{n0 + e} b_{d - e}, with zeta-Laurent rows.
  std::vector<std::map<i64, GaussInt>> b(static_cast<std::size_t>(limit) + 1);
  b[0][0] = u_inv;
  for (i64 d = 1; d <= limit; ++d) {
    std::map<i64, GaussInt> acc;
    for (std::size_t ri = 1; ri < rows.size(); ++ri) {
      const i64 e = rows[ri].n24 - n0;
      if (e > d) break;
      const auto& prev = b[static_cast<std::size_t>(d - e)];
      if (prev.empty()) continue;
      for (std::size_t x = rows[ri].begin; x < rows[ri].end; ++x) {
        const Term& t = a.terms()[x];
        for (const auto& [r2, c] : prev) acc[checked::add(t.r2, r2)] += t.c * c;
      }
    }
    for (auto& [r2, c] : acc) {
      const GaussInt v = -(u_inv * c);
      if (!v.is_zero()) b[static_cast<std::size_t>(d)][r2] = v;
    }
  }

  std::vector<Term> terms;
  for (i64 d = 0; d <= limit; ++d) {
    for (const auto& [r2, c] : b[static_cast<std::size_t>(d)]) terms.push_back({d - n0, r2, c});
  }
  std::optional<Ratio> index;
  if (a.index() && a.index()->num == 0) index = Ratio{0, 1};
  return QZSeries::from_terms(std::move(terms), checked::sub(limit, n0), index);
}

// ---------------------------------------------------------------------------
// Specializations and coefficient maps

QZSeries z_moment(const QZSeries& a, unsigned k) {
  if (k % 2 != 0) throw DomainError("z_moment order must be even");
  std::vector<Term> terms;
  for (const Term& t : a.terms()) {
    if (mod(t.r2, 2) != 0) {
      throw HalfIntegerExponentError("z_moment needs integral zeta exponents, found r2=" +
                                     std::to_string(t.r2));
    }
    terms.push_back({t.n24, 0, t.c * GaussInt(checked::pow(t.r2 / 2, k))});
  }
  return QZSeries::from_terms(std::move(terms), a.q_max24(), Ratio{0, 1});
}

namespace {

// Every monomial beyond q_max24 = q has n24 >= q + 1 and r2^2 <= (2/3) t n24,
// so after zeta -> q^alpha its exponent is at least x - sqrt(96 alpha^2 t x)
// evaluated at x = q + 1 (increasing there once x >= 24 alpha^2 t).
i64 substituted_truncation(Ratio index, i64 alpha, i64 q) {
  if (alpha == 0 || index.num == 0) return q;
  const i64 x = checked::add(q, 1);
  const i64 c2_num = checked::mul(checked::mul(96, checked::mul(alpha, alpha)), index.num);
  if (checked::mul(4 * x, index.den) < c2_num) {
    throw TruncationError("source truncation too small for substitution");
  }
  const i64 drop = isqrt_ceil(ceil_div(checked::mul(c2_num, x), index.den));
  return x - drop - 1;
}

}  // namespace

i64 substitution_source_bound(Ratio index, i64 alpha, i64 target24) {
  i64 q = target24;
  for (;;) {
    i64 got;
    try {
      got = substituted_truncation(index, alpha, q);
    } catch (const TruncationError&) {
      got = -(i64{1} << 62);
    }
    if (got >= target24) return q;
    q += std::max<i64>(1, std::min<i64>(target24 - got, i64{1} << 40));
  }
}

QZSeries substitute_z(const QZSeries& a, i64 alpha, i64 quarter_turns) {
  const i64 beta4 = mod(quarter_turns, 4);
  i64 q = a.q_max24();
  if (alpha != 0) {
    if (!a.index()) throw TruncationError("substitution with alpha != 0 needs a holomorphy index");
    q = substituted_truncation(*a.index(), alpha, q);
  }
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const Term& t : a.terms()) {
    // exp(2 pi i (beta4/4) (r2/2)) = exp(2 pi i beta4 r2 / 8)
    const i64 eighths = checked::mul(beta4, t.r2);
    if (mod(eighths, 2) != 0) {
      throw NonGaussianPhaseError("phase exp(pi i " + std::to_string(eighths) +
                                  "/4) is not a Gaussian unit");
    }
    const i64 n24 = checked::add(t.n24, checked::mul(12 * alpha, t.r2));
    terms.push_back({n24, 0, t.c * i_power(eighths / 2)});
  }
  return QZSeries::from_terms(std::move(terms), q, Ratio{0, 1});
}

QZSeries vl_action(const QZSeries& a, i64 l, i64 weight, i64 level) {
  if (l <= 0 || level <= 0) throw DomainError("V_l needs positive l and level");
  if (weight < 1) throw DomainError("V_l weight must be at least 1");
  if (!a.integral()) throw HalfIntegerExponentError("V_l needs integral q and zeta exponents");
  const i64 q_in = floor_div(a.q_max24(), 24);
  const i64 q_out = floor_div(q_in, l);

  std::vector<i64> divisors;
  for (i64 d = 1; d <= l; ++d) {
    if (l % d == 0 && std::gcd(d, level) == 1) divisors.push_back(d);
  }
  std::vector<Term> terms;
  for (const Term& t : a.terms()) {
    const i64 n_src = t.n24 / 24;
    const i64 r_src = t.r2 / 2;
    for (i64 d : divisors) {
      // Output (n, r) = (d^2 n_src / l, d r_src); d | n needs l | d n_src.
      const i64 dn = checked::mul(d, n_src);
      if (mod(dn, l) != 0) continue;
      const i64 n = checked::mul(d, dn / l);
      if (n > q_out) continue;
      const i64 r = checked::mul(d, r_src);
      terms.push_back({checked::mul(24, n), checked::mul(2, r),
                       t.c * GaussInt(checked::pow(d, static_cast<unsigned>(weight - 1)))});
    }
  }
  std::optional<Ratio> index;
  if (a.index()) index = *a.index() * Ratio::of(l);
  return QZSeries::from_terms(std::move(terms), checked::mul(24, q_out), index);
}

QZSeries rescale_tau(const QZSeries& a, i64 c) {
  if (c <= 0) throw DomainError("tau rescaling factor must be positive");
  std::vector<Term> terms(a.terms().begin(), a.terms().end());
  for (Term& t : terms) t.n24 = checked::mul(t.n24, c);
  std::optional<Ratio> index;
  if (a.index()) index = *a.index() * Ratio::of(1, c);
  return QZSeries::from_terms(std::move(terms), checked::mul(a.q_max24(), c), index);
}

QZSeries scale_z(const QZSeries& a, i64 l) {
  if (l == 0) throw DomainError("z scaling factor must be nonzero");
  std::vector<Term> terms(a.terms().begin(), a.terms().end());
  for (Term& t : terms) t.r2 = checked::mul(t.r2, l);
  std::optional<Ratio> index;
  if (a.index()) index = *a.index() * Ratio::of(checked::mul(l, l));
  return QZSeries::from_terms(std::move(terms), a.q_max24(), index);
}

QZSeries shift_q(const QZSeries& a, i64 d24) {
  std::vector<Term> terms(a.terms().begin(), a.terms().end());
  for (Term& t : terms) t.n24 = checked::add(t.n24, d24);
  std::optional<Ratio> index;
  if (a.index() && a.index()->num == 0) index = a.index();
  return QZSeries::from_terms(std::move(terms), checked::add(a.q_max24(), d24), index);
}

QZSeries truncate(const QZSeries& a, i64 q_max24) {
  if (q_max24 > a.q_max24()) {
    throw TruncationError("cannot extend truncation from " + std::to_string(a.q_max24()) + " to " +
                          std::to_string(q_max24));
  }
  return QZSeries::from_terms({a.terms().begin(), a.terms().end()}, q_max24, a.index());
}

QZSeries scale_by(const QZSeries& a, i64 factor) {
  std::vector<Term> terms(a.terms().begin(), a.terms().end());
  for (Term& t : terms) t.c = t.c * GaussInt(factor);
  return QZSeries::from_terms(std::move(terms), a.q_max24(), a.index());
}

QZSeries negate(const QZSeries& a) { return scale_by(a, -1); }

void dump(std::ostream& os, const QZSeries& a) {
  for (const Term& t : a.terms()) os << t.n24 << ' ' << t.r2 << ' ' << t.c.re << ' ' << t.c.im << '\n';
}

std::string dump(const QZSeries& a) {
  std::ostringstream os;
  dump(os, a);
  return os.str();
}

}  // namespace fourpoly
