#include "fourpoly/foursquares.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "parallel.hpp"

namespace fourpoly {

namespace {

i64 factorial(i64 k) {
  i64 f = 1;
  for (i64 i = 2; i <= k; ++i) f *= i;
  return f;
}

i64 signed_permutation_count(const Vec4& rep) {
  i64 nonzero = 0;
  for (i64 x : rep) nonzero += (x != 0);
  i64 denom = 1;
  for (std::size_t i = 0; i < 4;) {
    std::size_t j = i;
    while (j < 4 && rep[j] == rep[i]) ++j;
    denom *= factorial(static_cast<i64>(j - i));
    i = j;
  }
  return (i64{1} << nonzero) * 24 / denom;
}

i64 dot(const Vec4& a, const Vec4& b) {
  i64 s = 0;
  for (std::size_t i = 0; i < 4; ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

i64 norm(const Vec4& a) { return dot(a, a); }

}  // namespace

std::vector<OrbitInfo> sphere_orbits(i64 m) {
  if (m < 0) throw DomainError("norm must be nonnegative");
  std::vector<OrbitInfo> out;
  for (i64 a = 0; a * a <= m; ++a) {
    for (i64 b = 0; b <= a && a * a + b * b <= m; ++b) {
      for (i64 c = 0; c <= b && a * a + b * b + c * c <= m; ++c) {
        const i64 rest = m - a * a - b * b - c * c;
        if (!is_square(rest)) continue;
        const i64 d = isqrt(rest);
        if (d > c) continue;
        const Vec4 rep{a, b, c, d};
        out.push_back({rep, signed_permutation_count(rep)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const OrbitInfo& x, const OrbitInfo& y) { return x.rep < y.rep; });
  return out;
}

std::vector<Vec4> orbit_elements(const Vec4& v) {
  std::vector<Vec4> out;
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  do {
    for (int signs = 0; signs < 16; ++signs) {
      Vec4 u;
      for (std::size_t i = 0; i < 4; ++i) u[i] = ((signs >> i) & 1) ? -v[perm[i]] : v[perm[i]];
      out.push_back(u);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vec4> sphere_points(i64 n) {
  std::vector<Vec4> out;
  if (n < 0) return out;
  const i64 X = isqrt(n);
  for (i64 x = -X; x <= X; ++x) {
    const i64 rx = n - x * x;
    const i64 Y = isqrt(rx);
    for (i64 y = -Y; y <= Y; ++y) {
      const i64 ry = rx - y * y;
      const i64 Z = isqrt(ry);
      for (i64 z = -Z; z <= Z; ++z) {
        const i64 rz = ry - z * z;
        if (!is_square(rz)) continue;
        const i64 w = isqrt(rz);
        out.push_back({x, y, z, -w});
        if (w != 0) out.push_back({x, y, z, w});
      }
    }
  }
  return out;
}

i64 rho_v(const Vec4& v, i64 n, i64 r) {
  i64 count = 0;
  for (const Vec4& u : sphere_points(n)) count += (dot(u, v) == r);
  return count;
}

RhoCount rho_enum(i64 n, i64 r, i64 m) {
  if (n < 1) throw DomainError("rho needs n >= 1");
  const auto points = sphere_points(n);
  RhoCount total = 0;
  for (const auto& orbit : sphere_orbits(m)) {
    i64 count = 0;
    for (const Vec4& u : points) count += (dot(u, orbit.rep) == r);
    total = checked::add(total, checked::mul(orbit.size, count));
  }
  return total;
}

RhoTable::RhoTable(i64 n_max, i64 m)
    : n_max_(n_max), m_(m), r_bound_(isqrt_ceil(checked::mul(std::max<i64>(n_max, 0), m))) {
  if (n_max < 0 || m < 0) throw DomainError("rho table needs nonnegative bounds");
  const auto width = static_cast<std::size_t>(2 * r_bound_ + 1);
  counts_.assign(static_cast<std::size_t>(n_max_ + 1) * width, 0);
  const auto orbits = sphere_orbits(m);
  detail::FirstError failure;
#pragma omp parallel for schedule(dynamic)
  for (i64 n = 1; n <= n_max_; ++n) {
    failure.run([&] {
      const auto points = sphere_points(n);
      RhoCount* row = counts_.data() + static_cast<std::size_t>(n) * width;
      for (const auto& orbit : orbits) {
        for (const Vec4& u : points) {
          row[dot(u, orbit.rep) + r_bound_] += orbit.size;
        }
      }
    });
  }
  failure.rethrow();
}

RhoCount RhoTable::at(i64 n, i64 r) const {
  if (n < 1 || n > n_max_) throw DomainError("rho table queried outside 1..n_max");
  if (r < -r_bound_ || r > r_bound_) return 0;
  const auto width = static_cast<std::size_t>(2 * r_bound_ + 1);
  return counts_[static_cast<std::size_t>(n) * width + static_cast<std::size_t>(r + r_bound_)];
}

RhoCount rho_formula(const ClassTable& table, i64 n, i64 r, i64 m) {
  if (n < 1) throw DomainError("rho needs n >= 1");
  if (m < 0) throw DomainError("rho needs m >= 0");
  const i64 disc = checked::sub(checked::mul(n, m), checked::mul(r, r));
  if (disc < 0) return 0;
  const i64 g = gcd3(n, r < 0 ? -r : r, m);
  const bool even_case = std::gcd(n, m) % 2 == 0;
  i64 first = 0;
  i64 second = 0;
  for (i64 d = 1; d <= g; d += 2) {
    if (g % d != 0) continue;
    const i64 d2 = d * d;
    // d divides n, r and m, so d^2 divides nm - r^2; kept as a guard.
    if (disc % d2 != 0) continue;
    first = checked::add(first, checked::mul(d, table.h2(checked::mul(4, disc / d2))));
    if (even_case) second = checked::add(second, checked::mul(d, table.h2(disc / d2)));
  }
  // 96 H^(2) = 8 * (12 H^(2)).
  return checked::mul(8, checked::add(first, checked::mul(2, second)));
}

i64 rho_formula_table_need(i64 n, i64 m) { return checked::mul(16, checked::mul(n, m)); }

LemmaResult lemma_search(const ClassTable& table, i64 D, i64 s_max) {
  if (D < 1) throw DomainError("lemma_search needs D >= 1");
  if (s_max < 0) throw DomainError("s_max must be nonnegative");
  i64 power = 1;
  for (i64 s = 0; s <= s_max; ++s) {
    if (power > D) return {std::nullopt, true};
    if (table.h2(checked::mul(4, D - power)) > 0) return {s, true};
    if (s < s_max) power = checked::mul(power, 16);
  }
  // power = 16^s_max here; 16^(s_max+1) > D means nothing larger was skipped.
  return {std::nullopt, power > D / 16};
}

std::optional<Witness> sun_witness(const Vec4& v, i64 n, i64 s_max) {
  if (n < 1) throw DomainError("sun_witness needs n >= 1");
  const i64 mn = checked::mul(norm(v), n);
  i64 target = 1;
  for (i64 s = 0; s <= s_max; ++s, target = checked::mul(target, 4)) {
    if (checked::mul(target, target) > mn) break;  // Cauchy-Schwarz
    const i64 X = isqrt(n);
    for (i64 x = -X; x <= X; ++x) {
      const i64 rx = n - x * x;
      const i64 Y = isqrt(rx);
      for (i64 y = -Y; y <= Y; ++y) {
        const i64 ry = rx - y * y;
        const i64 Z = isqrt(ry);
        for (i64 z = -Z; z <= Z; ++z) {
          const i64 rz = ry - z * z;
          if (!is_square(rz)) continue;
          const i64 w0 = isqrt(rz);
          for (i64 w : {-w0, w0}) {
            if (dot(v, {x, y, z, w}) == target) return Witness{n, s, x, y, z, w};
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

struct HalfKey {
  i64 norm;
  i64 dot;
  bool operator==(const HalfKey&) const = default;
};

struct HalfKeyHash {
  std::size_t operator()(const HalfKey& k) const noexcept {
    return std::hash<i64>{}(k.norm * 1000003 + k.dot);
  }
};

}  // namespace

SunReport sun_verify(const Vec4& v, i64 n_max, i64 s_max) {
  if (n_max < 1) throw DomainError("sun_verify needs n_max >= 1");
  if (s_max < 0) throw DomainError("s_max must be nonnegative");
  // Lexicographically smallest (z, w) per (z^2 + w^2, c z + d w).
  std::unordered_map<HalfKey, std::pair<i64, i64>, HalfKeyHash> tail;
  const i64 R = isqrt(n_max);
  for (i64 z = -R; z <= R; ++z) {
    for (i64 w = -R; w <= R; ++w) {
      const i64 nn = z * z + w * w;
      if (nn > n_max) continue;
      tail.try_emplace(HalfKey{nn, v[2] * z + v[3] * w}, z, w);
    }
  }

  const i64 m = norm(v);
  std::vector<std::optional<Witness>> found(static_cast<std::size_t>(n_max) + 1);
  detail::FirstError failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (i64 n = 1; n <= n_max; ++n) {
    failure.run([&] {
      const i64 mn = checked::mul(m, n);
      i64 target = 1;
      for (i64 s = 0; s <= s_max; ++s, target = checked::mul(target, 4)) {
        if (checked::mul(target, target) > mn) return;
        const i64 X = isqrt(n);
        for (i64 x = -X; x <= X; ++x) {
          const i64 Y = isqrt(n - x * x);
          for (i64 y = -Y; y <= Y; ++y) {
            auto it = tail.find(HalfKey{n - x * x - y * y, target - v[0] * x - v[1] * y});
            if (it == tail.end()) continue;
            found[static_cast<std::size_t>(n)] = Witness{n, s, x, y, it->second.first, it->second.second};
            return;
          }
        }
      }
    });
  }
  failure.rethrow();

  SunReport report{v, n_max, s_max, {}, {}};
  for (i64 n = 1; n <= n_max; ++n) {
    if (const auto& w = found[static_cast<std::size_t>(n)]) {
      report.witnesses.push_back(*w);
    } else {
      // 4^(s_max+1) > sqrt(mn) rules out every larger s.
      const i64 next = checked::pow(4, static_cast<unsigned>(std::min<i64>(s_max + 1, 31)));
      const bool exhaustive = s_max + 1 >= 31 || checked::mul(next, next) > checked::mul(m, n);
      report.not_found.push_back({n, exhaustive});
    }
  }
  return report;
}

std::span<const Vec4> sun_part1_vectors() {
  static const std::array<Vec4, 11> kVectors{{{1, 1, 1, 0},
                                              {2, 1, 0, 0},
                                              {2, 1, 1, 0},
                                              {2, 1, 1, 1},
                                              {3, 1, 1, 0},
                                              {3, 2, 1, 0},
                                              {3, 2, 1, 1},
                                              {3, 3, 2, 1},
                                              {4, 2, 2, 0},
                                              {6, 4, 2, 0},
                                              {2, 2, 1, 0}}};
  return kVectors;
}

std::span<const Vec4> sun_part2_vectors() {
  static const std::array<Vec4, 3> kVectors{{{1, 0, 0, 0}, {1, 1, 0, 0}, {2, 2, 0, 0}}};
  return kVectors;
}

}  // namespace fourpoly
