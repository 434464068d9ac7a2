#include "fourpoly/polygonal.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "lattice_line.hpp"
#include "parallel.hpp"

namespace fourpoly {

namespace {

void require_order(i64 order) {
  if (order < 3) throw DomainError("polygon order must be at least 3, got " + std::to_string(order));
}

void require_coeffs(std::span<const i64> coeffs) {
  if (coeffs.empty()) throw DomainError("need at least one coefficient");
  for (i64 c : coeffs) {
    if (c <= 0) throw DomainError("coefficients must be positive");
  }
}

/// All values coeff * p_order(ell) <= N, one entry per ell.
std::vector<i64> slot_values(i64 order, i64 coeff, i64 N) {
  std::vector<i64> out;
  const i64 bound = pgon_search_bound(order, coeff, N);
  for (i64 ell = -bound; ell <= bound; ++ell) {
    const i64 v = checked::mul(coeff, pgon(order, ell));
    if (v <= N) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<i64> slot_histogram(i64 order, i64 coeff, i64 N) {
  std::vector<i64> h(static_cast<std::size_t>(N) + 1, 0);
  for (i64 v : slot_values(order, coeff, N)) ++h[static_cast<std::size_t>(v)];
  return h;
}

}  // namespace

i64 pgon(i64 order, i64 ell) {
  require_order(order);
  const i64 twice = checked::sub(checked::mul(order - 2, checked::mul(ell, ell)), checked::mul(order - 4, ell));
  return twice / 2;
}

i64 pgon_search_bound(i64 order, i64 coeff, i64 N) {
  require_order(order);
  if (N < 0) return 0;
  const i64 lin = order - 4 < 0 ? 4 - order : order - 4;
  const i64 disc = checked::add(checked::mul(lin, lin), ceil_div(checked::mul(8 * N, order - 2), coeff));
  return 1 + ceil_div(checked::add(lin, isqrt_ceil(disc)), 2 * (order - 2));
}

RepCount enum_reps(i64 order, std::span<const i64> coeffs, i64 N) {
  require_order(order);
  require_coeffs(coeffs);
  if (N < 0) return 0;
  std::vector<std::vector<i64>> slots;
  for (i64 c : coeffs) slots.push_back(slot_values(order, c, N));
  // The last slot is looked up instead of scanned.
  const auto last = slot_histogram(order, coeffs.back(), N);

  std::function<RepCount(std::size_t, i64)> count = [&](std::size_t slot, i64 remaining) -> RepCount {
    if (slot + 1 == slots.size()) return last[static_cast<std::size_t>(remaining)];
    RepCount total = 0;
    for (i64 v : slots[slot]) {
      if (v > remaining) break;
      total = checked::add(total, count(slot + 1, remaining - v));
    }
    return total;
  };
  return count(0, N);
}

std::vector<RepCount> rep_count_table(i64 order, std::span<const i64> coeffs, i64 n_max) {
  require_order(order);
  require_coeffs(coeffs);
  if (n_max < 0) return {};
  const auto size = static_cast<std::size_t>(n_max) + 1;
  std::vector<RepCount> acc(size, 0);
  acc[0] = 1;
  detail::FirstError failure;
  for (i64 c : coeffs) {
    const auto hist = slot_histogram(order, c, n_max);
    std::vector<i64> support;
    for (std::size_t v = 0; v < size; ++v) {
      if (hist[v] != 0) support.push_back(static_cast<i64>(v));
    }
    std::vector<RepCount> next(size, 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 n = 0; n <= n_max; ++n) {
      failure.run([&] {
        RepCount total = 0;
        for (i64 v : support) {
          if (v > n) break;
          total = checked::add(total, checked::mul(hist[static_cast<std::size_t>(v)],
                                                   acc[static_cast<std::size_t>(n - v)]));
        }
        next[static_cast<std::size_t>(n)] = total;
      });
    }
    failure.rethrow();
    acc = std::move(next);
  }
  return acc;
}

RepCount unordered_reps(i64 order, i64 count, i64 N) {
  require_order(order);
  if (count <= 0) throw DomainError("count must be positive");
  if (N < 0) return 0;
  auto values = slot_values(order, 1, N);
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::function<RepCount(std::size_t, i64, i64)> walk = [&](std::size_t start, i64 slots,
                                                            i64 remaining) -> RepCount {
    if (slots == 0) return remaining == 0 ? 1 : 0;
    RepCount total = 0;
    for (std::size_t i = start; i < values.size(); ++i) {
      // Remaining slots all take values >= values[i].
      if (checked::mul(values[i], slots) > remaining) break;
      total = checked::add(total, walk(i, slots - 1, remaining - values[i]));
    }
    return total;
  };
  return walk(0, count, N);
}

RepCount octagonal_unordered(i64 N) { return unordered_reps(8, 4, N); }

RepCount jacobi_r44(i64 N) {
  if (N < 1) throw DomainError("jacobi_r44 needs N >= 1");
  RepCount sum = 0;
  for (i64 d = 1; d * d <= N; ++d) {
    if (N % d != 0) continue;
    if (d % 4 != 0) sum = checked::add(sum, d);
    const i64 e = N / d;
    if (e != d && e % 4 != 0) sum = checked::add(sum, e);
  }
  return checked::mul(8, sum);
}

std::vector<FormulaTerm> r4_formula_terms(const ClassTable& table, i64 m, i64 N) {
  if (m < 1) throw DomainError("r4_formula needs m >= 1");
  if (N < 0) return {};
  std::vector<FormulaTerm> terms;
  // 2r = m n + 4 - m - 2N over odd n.
  detail::for_each_on_line(m, checked::sub(4 - m, checked::mul(2, N)), 2, 4, 1, 2, [&](i64 n, i64 r) {
    const i64 D = 4 * n - r * r;
    terms.push_back({n, r, (r % 2 == 0) ? table.h2(D) : table.h(D)});
  });
  return terms;
}

RepCount r4_formula(const ClassTable& table, i64 m, i64 N) {
  RepCount total = 0;
  for (const auto& t : r4_formula_terms(table, m, N)) total = checked::add(total, t.value);
  return total;
}

i64 r4_formula_table_need(i64 m, i64 N) {
  if (m < 1 || N < 0) return 0;
  const i64 last = detail::for_each_on_line(m, checked::sub(4 - m, checked::mul(2, N)), 2, 4, 1, 2,
                                            [](i64, i64) {});
  return checked::mul(16, last);
}

RepCount three_square_count(const ClassTable& table, i64 N) {
  if (N < 0) return 0;
  return table.h2(checked::mul(4, N));
}

RepCount xxyy2z_count(const ClassTable& table, i64 N) {
  if (N < 0) return 0;
  const i64 scaled =
      checked::add(checked::mul(4, table.h2(checked::mul(8, N))), checked::mul(8, table.h2(checked::mul(2, N))));
  if (scaled % 12 != 0) throw Error("x^2+y^2+2z^2 class-number sum not divisible by 12");
  return scaled / 12;
}

namespace {

struct RstarSum {
  i64 weight;   // multiplier of 12 H^(3)
  i64 a, c, K;  // c r = a n + (4 - m - N), r^2 <= K n
  bool alternating;
};

std::array<RstarSum, 4> rstar_sums(i64 m) {
  return {{{7, m, 2, 4, false},
           {-1, m, 1, 16, true},
           {-2, 2 * m, 2, 8, false},
           {-4, 4 * m, 4, 4, false}}};
}

}  // namespace

RepCount rstar_formula(const ClassTable& table, i64 m, i64 N) {
  if (m < 1) throw DomainError("rstar_formula needs m >= 1");
  if (N < 0) return 0;
  const i64 b = 4 - m - N;
  i64 scaled = 0;
  for (const auto& s : rstar_sums(m)) {
    detail::for_each_on_line(s.a, b, s.c, s.K, 0, 1, [&](i64 n, i64 r) {
      i64 term = checked::mul(s.weight, table.h3(s.K * n - r * r));
      if (s.alternating && mod(r, 2) != 0) term = checked::neg(term);
      scaled = checked::add(scaled, term);
    });
  }
  if (scaled % 12 != 0) throw Error("R* class-number sum not divisible by 12");
  return scaled / 12;
}

i64 rstar_formula_table_need(i64 m, i64 N) {
  if (m < 1 || N < 0) return 0;
  i64 need = 0;
  for (const auto& s : rstar_sums(m)) {
    const i64 last = detail::for_each_on_line(s.a, 4 - m - N, s.c, s.K, 0, 1, [](i64, i64) {});
    need = std::max(need, checked::mul(9 * s.K, last));
  }
  return need;
}

}  // namespace fourpoly
