#include "fourpoly/hurwitz.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

namespace fourpoly {

namespace {

// 12 * weight of a reduced form: 1/3 on multiples of x^2+xy+y^2, 1/2 on
// multiples of x^2+y^2, 1 otherwise.
constexpr ScaledH form_weight(i64 a, i64 b, i64 c) {
  if (a == c && b == a) return 4;
  if (a == c && b == 0) return 6;
  return 12;
}

bool residue_03(i64 D) {
  const i64 r = mod(D, 4);
  return r == 0 || r == 3;
}

// Only the forms on the lines through x^2+xy+y^2 and x^2+y^2 carry
// fractional weight, so 12H(D) mod 12 is 4 on D = 3f^2, 6 on D = 4f^2, else 0.
ScaledH fractional_part12(i64 D) {
  if (D % 3 == 0 && is_square(D / 3)) return 4;
  if (D % 4 == 0 && is_square(D / 4)) return 6;
  return 0;
}

// sum_{r} 12H(4n - r^2) = 24 sigma(n) - 12 sum_{d | n} min(d, n/d) for every
// n with 4n <= d_max. Every entry below d_max - 3 with D = 0, 3 mod 4 appears
// in some relation, so a single wrong value cannot slip through.
std::string check_kronecker_hurwitz(std::span<const ScaledH> v) {
  const i64 n_max = (static_cast<i64>(v.size()) - 1) / 4;
  if (n_max < 1) return {};
  std::vector<i64> sigma(static_cast<std::size_t>(n_max) + 1, 0);
  std::vector<i64> mins(static_cast<std::size_t>(n_max) + 1, 0);
  for (i64 d = 1; d <= n_max; ++d) {
    for (i64 n = d; n <= n_max; n += d) sigma[n] += d;
    for (i64 k = d; d * k <= n_max; ++k) mins[d * k] += (k == d) ? d : 2 * d;
  }
  i64 bad = n_max + 1;
#pragma omp parallel for schedule(dynamic, 256) reduction(min : bad)
  for (i64 n = 1; n <= n_max; ++n) {
    i64 lhs = v[4 * n];
    for (i64 r = 1; r * r <= 4 * n; ++r) lhs += 2 * v[4 * n - r * r];
    if (lhs != 24 * sigma[n] - 12 * mins[n]) bad = std::min(bad, n);
  }
  if (bad <= n_max) return "class-number relation fails at n=" + std::to_string(bad);
  return {};
}

}  // namespace

ClassTable::ClassTable(i64 d_max, std::size_t max_entries) {
  if (d_max < 0) throw DomainError("class table bound must be nonnegative");
  if (static_cast<std::size_t>(d_max) >= max_entries) {
    throw ResourceError("class table with d_max=" + std::to_string(d_max) +
                        " exceeds the memory cap of " + std::to_string(max_entries) + " entries");
  }
  values_.assign(static_cast<std::size_t>(d_max) + 1, 0);
  values_[0] = -1;
  for (i64 a = 1; 3 * a * a <= d_max; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      // (a, b, a) with b < 0 is equivalent to (a, -b, a).
      for (i64 c = (b < 0 ? a + 1 : a);; ++c) {
        const i64 D = 4 * a * c - b * b;
        if (D > d_max) break;
        values_[static_cast<std::size_t>(D)] += form_weight(a, b, c);
      }
    }
  }
}

ClassTable ClassTable::from_values(std::vector<ScaledH> values) {
  if (auto problem = check_table_invariants(values); !problem.empty()) throw CacheError(problem);
  ClassTable t;
  t.values_ = std::move(values);
  return t;
}

ScaledH ClassTable::h(i64 D) const {
  if (D < 0) return 0;
  if (D > d_max()) {
    throw OutOfTableError("H(" + std::to_string(D) + ") beyond class table bound " +
                          std::to_string(d_max()));
  }
  return values_[static_cast<std::size_t>(D)];
}

ScaledH ClassTable::h2(i64 D) const {
  if (D < 0 || !residue_03(D)) return 0;
  return checked::sub(h(checked::mul(4, D)), checked::mul(2, h(D)));
}

ScaledH ClassTable::h2_alt(i64 D) const {
  if (D <= 0) throw DomainError("h2_alt is defined for D > 0 only");
  if (!residue_03(D)) throw DomainError("h2_alt needs D = 0, 3 mod 4");
  i64 core = D;
  while (core % 4 == 0 && residue_03(core / 4)) core /= 4;
  return checked::mul(h(core), 1 - kronecker2(-core));
}

ScaledH ClassTable::h3(i64 D) const {
  if (D < 0 || !residue_03(D)) return 0;
  return checked::sub(h(checked::mul(9, D)), checked::mul(3, h(D)));
}

int kronecker2(i64 d) {
  switch (mod(d, 8)) {
    case 1:
    case 7: return 1;
    case 3:
    case 5: return -1;
    default: return 0;
  }
}

ScaledH hurwitz_direct(i64 D) {
  if (D < 0 || !residue_03(D)) return 0;
  if (D == 0) return -1;
  ScaledH total = 0;
  const i64 b_max = isqrt(D / 3);
  for (i64 b = -b_max; b <= b_max; ++b) {
    if (mod(b, 2) != mod(D, 2)) continue;
    const i64 ac = (D + b * b) / 4;
    const i64 abs_b = b < 0 ? -b : b;
    for (i64 a = std::max<i64>(abs_b, 1); a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      const i64 c = ac / a;
      if (b < 0 && (abs_b == a || a == c)) continue;
      total += form_weight(a, b, c);
    }
  }
  return total;
}

std::string check_table_invariants(std::span<const ScaledH> values) {
  if (values.empty()) return "class table is empty";
  if (values[0] != -1) return "12H(0) must be -1, found " + std::to_string(values[0]);
  for (std::size_t D = 1; D < values.size(); ++D) {
    const bool nonresidue = (D % 4 == 1 || D % 4 == 2);
    if (nonresidue && values[D] != 0) return "12H(" + std::to_string(D) + ") must vanish";
    if (!nonresidue && values[D] <= 0) return "12H(" + std::to_string(D) + ") must be positive";
    if (!nonresidue && mod(values[D], 12) != fractional_part12(static_cast<i64>(D))) {
      return "12H(" + std::to_string(D) + ") has the wrong residue mod 12";
    }
  }
  return {};
}

void write_class_table(std::ostream& os, const ClassTable& table) {
  os << "D,12H\n";
  const auto v = table.values();
  for (std::size_t D = 0; D < v.size(); ++D) os << D << ',' << v[D] << '\n';
}

ClassTable read_class_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "D,12H") throw CacheError("missing header line \"D,12H\"");
  std::vector<ScaledH> values;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw CacheError("malformed line: " + line);
    i64 D = 0;
    i64 v = 0;
    const char* first = line.data();
    const char* mid = first + comma;
    const char* last = first + line.size();
    auto [p1, e1] = std::from_chars(first, mid, D);
    auto [p2, e2] = std::from_chars(mid + 1, last, v);
    if (e1 != std::errc{} || e2 != std::errc{} || p1 != mid || p2 != last) {
      throw CacheError("malformed line: " + line);
    }
    if (D != static_cast<i64>(values.size())) {
      throw CacheError("expected D=" + std::to_string(values.size()) + ", found " + std::to_string(D));
    }
    values.push_back(v);
  }
  auto table = ClassTable::from_values(std::move(values));
  if (auto problem = check_kronecker_hurwitz(table.values()); !problem.empty()) throw CacheError(problem);

  // Spot-check a spread of entries plus the tail (which no relation reaches)
  // against direct enumeration.
  const i64 top = table.d_max();
  const i64 stride = std::max<i64>(1, top / 64);
  for (i64 D = 0; D <= top; D += stride) {
    if (table.h(D) != hurwitz_direct(D)) throw CacheError("cached 12H(" + std::to_string(D) + ") is wrong");
  }
  for (i64 D = std::max<i64>(0, top - 16); D <= top; ++D) {
    if (table.h(D) != hurwitz_direct(D)) throw CacheError("cached 12H(" + std::to_string(D) + ") is wrong");
  }
  return table;
}

i64 class_series_table_need(ClassSeriesKind kind, i64 q_max) {
  switch (kind) {
    case ClassSeriesKind::H:
    case ClassSeriesKind::H0: return checked::mul(16, q_max);
    case ClassSeriesKind::H1: return checked::mul(4, q_max);
    case ClassSeriesKind::Hstar: return checked::mul(36, q_max);
  }
  return 0;
}

QZSeries class_jacobi_series(const ClassTable& table, ClassSeriesKind kind, i64 q_max) {
  if (q_max < 0) throw DomainError("q_max must be nonnegative");
  std::vector<Term> terms;
  for (i64 n = 0; n <= q_max; ++n) {
    const i64 r_max = isqrt(4 * n);
    for (i64 r = -r_max; r <= r_max; ++r) {
      const i64 D = 4 * n - r * r;
      ScaledH c = 0;
      switch (kind) {
        case ClassSeriesKind::H: c = table.h2(D); break;
        case ClassSeriesKind::H0: c = (r % 2 == 0) ? table.h2(D) : 0; break;
        case ClassSeriesKind::H1: c = (n % 2 != 0 && r % 2 != 0) ? checked::mul(2, table.h(D)) : 0; break;
        case ClassSeriesKind::Hstar: c = table.h3(D); break;
      }
      if (c != 0) terms.push_back({24 * n, 2 * r, c});
    }
  }
  return QZSeries::from_terms(std::move(terms), 24 * q_max, Ratio{1, 1});
}

}  // namespace fourpoly
