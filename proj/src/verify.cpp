#include "fourpoly/verify.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include <json.hpp>

#include "fourpoly/foursquares.hpp"
#include "fourpoly/polygonal.hpp"
#include "lattice_line.hpp"
#include "parallel.hpp"

namespace fourpoly {

namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 14> kNames{{
    {IdentityId::power4, "power4"},
    {IdentityId::basis_combination, "basis_combination"},
    {IdentityId::eta4, "eta4"},
    {IdentityId::eta12, "eta12"},
    {IdentityId::tau2, "tau2"},
    {IdentityId::psi_decomp, "psi_decomp"},
    {IdentityId::h0h1_printed, "h0h1_printed"},
    {IdentityId::thm11, "thm11"},
    {IdentityId::thm14, "thm14"},
    {IdentityId::app1133, "app1133"},
    {IdentityId::app_rstar, "app_rstar"},
    {IdentityId::app_eta2, "app_eta2"},
    {IdentityId::app_eta6, "app_eta6"},
    {IdentityId::h2_defs, "h2_defs"},
}};

constexpr std::array<IdentityId, 14> kAll{
    IdentityId::power4,    IdentityId::basis_combination, IdentityId::eta4,      IdentityId::eta12,
    IdentityId::tau2,      IdentityId::psi_decomp,        IdentityId::h0h1_printed, IdentityId::thm11,
    IdentityId::thm14,     IdentityId::app1133,           IdentityId::app_rstar, IdentityId::app_eta2,
    IdentityId::app_eta6,  IdentityId::h2_defs,
};

// Grids that do not scale with qmax.
constexpr i64 kThm11MaxM = 10;
constexpr i64 kThm14MaxM = 16;
constexpr i64 kThm14ExtraM = 35;
constexpr i64 kThm14ExtraN = 20;
constexpr i64 kRstarMaxM = 8;

bool key_less(const Term& x, const Term& y) {
  return x.n24 != y.n24 ? x.n24 < y.n24 : x.r2 < y.r2;
}

/// First (n24, r2), in lexicographic order, where the two series differ on
/// n24 <= target24.
std::optional<Mismatch> compare_series(const QZSeries& lhs, const QZSeries& rhs, i64 target24, i64 scale,
                                       std::string route) {
  const i64 have = std::min(lhs.q_max24(), rhs.q_max24());
  if (have < target24) {
    throw TruncationError(route + ": series complete only through n24=" + std::to_string(have) +
                          ", need " + std::to_string(target24));
  }
  const auto a = lhs.terms();
  const auto b = rhs.terms();
  std::size_t i = 0, j = 0;
  for (;;) {
    const bool ha = i < a.size() && a[i].n24 <= target24;
    const bool hb = j < b.size() && b[j].n24 <= target24;
    if (!ha && !hb) return std::nullopt;
    Term key{};
    GaussInt x, y;
    if (ha && (!hb || key_less(a[i], b[j]))) {
      key = a[i];
      x = a[i++].c;
    } else if (hb && (!ha || key_less(b[j], a[i]))) {
      key = b[j];
      y = b[j++].c;
    } else {
      key = a[i];
      x = a[i++].c;
      y = b[j++].c;
    }
    if (x != y) return Mismatch{{{"n24", key.n24}, {"r2", key.r2}}, x, y, scale, std::move(route)};
  }
}

VerificationReport finish(IdentityId id, std::string range, std::optional<Mismatch> m) {
  const bool pass = !m.has_value();
  return {id, std::move(range), pass, std::move(m)};
}

std::string q_range(i64 q) { return "q^0..q^" + std::to_string(q); }

/// Terms c q^n zeta^(r) and c q^n zeta^(-r); a single term when r = 0.
void add_symmetric(std::vector<Term>& out, i64 n, i64 r, i64 c) {
  out.push_back({24 * n, 2 * r, c});
  if (r != 0) out.push_back({24 * n, -2 * r, c});
}

QZSeries theta4_2_2(i64 q_max24) { return pow(theta(2, 2, q_max24), 4); }

/// theta(tau, z)^2 theta(3 tau, 3 z)^2.
QZSeries theta_1133(i64 q_max24) {
  return mul(pow(theta(1, 1, q_max24), 2), pow(theta(3, 3, q_max24), 2));
}

/// theta(tau,z)^2 theta(tau,2z) theta(2tau,2z)^2 theta(2tau,4z) / (eta(tau) eta(2tau)).
QZSeries psi29(i64 q_max24) {
  const std::array<EtaFactor, 2> inv{{{1, -1}, {2, -1}}};
  QZSeries num = mul(pow(theta(1, 1, q_max24), 2), theta(1, 2, q_max24));
  num = mul(num, pow(theta(2, 2, q_max24), 2));
  num = mul(num, theta(2, 4, q_max24));
  return mul(num, eta_product(inv, q_max24));
}

// ---------------------------------------------------------------------------
// Class-number sides that are plain q-series

/// sum over odd n on the line 3n + 4r + 5 = 2N of 12H2 (r even) or -12H (r odd).
QZSeries eta4_class_side(const ClassTable& t, i64 Q) {
  std::vector<Term> terms;
  for (i64 N = 0; N <= Q; ++N) {
    i64 s = 0;
    detail::for_each_on_line(-3, 2 * N - 5, 4, 4, 1, 2, [&](i64 n, i64 r) {
      const i64 D = 4 * n - r * r;
      s = checked::add(s, (r % 2 == 0) ? t.h2(D) : checked::neg(t.h(D)));
    });
    terms.push_back({24 * N, 0, s});
  }
  return QZSeries::from_terms(std::move(terms), 24 * Q);
}

i64 eta4_table_need(i64 Q) {
  i64 need = 0;
  for (i64 N = 0; N <= Q; ++N) {
    const i64 last = detail::for_each_on_line(-3, 2 * N - 5, 4, 4, 1, 2, [](i64, i64) {});
    need = std::max(need, checked::mul(16, last));
  }
  return need;
}

struct Eta2Sum {
  i64 weight;  // multiplier of 12 H3
  i64 a, c, K;  // c r = N - 5 - a n, K n - r^2 >= 0
};

constexpr std::array<Eta2Sum, 4> kEta2Sums{{{7, 3, 4, 4}, {-1, 3, 2, 16}, {-2, 6, 4, 8}, {-4, 12, 8, 4}}};

QZSeries eta2_class_side(const ClassTable& t, i64 Q) {
  std::vector<Term> terms;
  for (i64 N = 0; N <= Q; ++N) {
    i64 s = 0;
    for (const auto& sum : kEta2Sums) {
      detail::for_each_on_line(-sum.a, N - 5, sum.c, sum.K, 0, 1, [&](i64 n, i64 r) {
        s = checked::add(s, checked::mul(sum.weight, t.h3(sum.K * n - r * r)));
      });
    }
    terms.push_back({24 * N, 0, s});
  }
  return QZSeries::from_terms(std::move(terms), 24 * Q);
}

i64 eta2_table_need(i64 Q) {
  i64 need = 0;
  for (i64 N = 0; N <= Q; ++N) {
    for (const auto& sum : kEta2Sums) {
      const i64 last = detail::for_each_on_line(-sum.a, N - 5, sum.c, sum.K, 0, 1, [](i64, i64) {});
      need = std::max(need, checked::mul(9 * sum.K, last));
    }
  }
  return need;
}

/// sum_{r^2 <= K n} r^k f(K n - r^2).
template <class F>
i64 moment_sum(i64 K, i64 n, unsigned k, F&& f) {
  i64 s = 0;
  const i64 R = isqrt(checked::mul(K, n));
  for (i64 r = -R; r <= R; ++r) {
    s = checked::add(s, checked::mul(checked::pow(r, k), f(K * n - r * r)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Identities

VerificationReport check_power4(const ClassTable& t, i64 Q) {
  // The class-number side already carries the factor 12.
  const QZSeries lhs = theta4_2_2(24 * Q + 24);
  std::vector<Term> terms;
  for (i64 n = 1; n <= Q; n += 2) {
    const i64 R = isqrt(4 * n);
    for (i64 r = -R; r <= R; ++r) {
      const i64 D = 4 * n - r * r;
      terms.push_back({24 * n, 4 * r, (r % 2 == 0) ? t.h2(D) : checked::neg(t.h(D))});
    }
  }
  const QZSeries rhs = QZSeries::from_terms(std::move(terms), 24 * Q);
  return finish(IdentityId::power4, q_range(Q), compare_series(lhs, rhs, 24 * Q, 1, "class_sum"));
}

VerificationReport check_basis_combination(const ClassTable& t, i64 Q) {
  const QZSeries h0 = class_jacobi_series(t, ClassSeriesKind::H0, Q + 1);
  const QZSeries h1 = class_jacobi_series(t, ClassSeriesKind::H1, Q + 1);
  const QZSeries a = scale_z(h0, 2);
  const QZSeries b = scale_z(h1, 2);
  const QZSeries c = rescale_tau(scale_z(vl_action(h0, 2, 2, 4), 2), 2);
  // theta^4 = H0(tau,2z) - 1/2 H1(tau,2z) - (H0|V2)(2tau,2z), cleared at scale 2.
  const std::array<LinearTerm, 3> parts{{{Ratio::of(1), a}, {Ratio::of(-1, 2), b}, {Ratio::of(-1), c}}};
  const QZSeries rhs = linear_combine(parts, 2);
  const QZSeries lhs = scale_by(theta4_2_2(24 * Q + 24), 2);
  return finish(IdentityId::basis_combination, q_range(Q),
                compare_series(lhs, rhs, 24 * Q, 2, "basis"));
}

VerificationReport check_eta4(const ClassTable& t, i64 Q) {
  const std::array<EtaFactor, 1> f{{{1, 4}}};
  const QZSeries eta = shift_q(eta_product(f, 24 * Q + 4), -4);
  if (auto m = compare_series(eta, eta4_class_side(t, Q), 24 * Q, 1, "class_sum")) {
    return finish(IdentityId::eta4, q_range(Q), std::move(m));
  }
  // theta(3 tau, 2 tau)^4 = q^(-5/2) prod (1 - q^n)^4
  const i64 target = 24 * Q - 60;
  const Ratio index = Ratio::of(8, 3);
  const i64 src = substitution_source_bound(index, 1, target);
  const QZSeries sub = shift_q(substitute_z(pow(theta(3, 2, src), 4), 1, 0), 60);
  return finish(IdentityId::eta4, q_range(Q), compare_series(eta, sub, 24 * Q, 1, "substitution"));
}

VerificationReport check_eta12(const ClassTable& t, i64 Q) {
  const std::array<EtaFactor, 1> f{{{2, 12}}};
  const QZSeries eta = eta_product(f, 24 * Q);
  std::vector<Term> terms;
  for (i64 n = 1; n <= Q; n += 2) {
    const i64 s = moment_sum(4, n, 4, [&](i64 D) {
      // r and D have the same parity here
      return (D % 2 == 0) ? t.h2(D) : checked::neg(t.h(D));
    });
    terms.push_back({24 * n, 0, s});
  }
  const QZSeries rhs = QZSeries::from_terms(std::move(terms), 24 * Q);
  if (auto m = compare_series(scale_by(eta, 24), rhs, 24 * Q, 24, "class_sum")) {
    return finish(IdentityId::eta12, q_range(Q), std::move(m));
  }
  const QZSeries moment = z_moment(theta4_2_2(24 * Q + 24), 4);
  return finish(IdentityId::eta12, q_range(Q), compare_series(scale_by(eta, 384), moment, 24 * Q, 384, "moment"));
}

VerificationReport check_tau2(const ClassTable& t, i64 Q) {
  const std::array<EtaFactor, 2> f{{{1, 8}, {2, 8}}};
  const QZSeries eta = eta_product(f, 24 * Q);
  std::vector<Term> terms;
  for (i64 n = 1; n <= Q; ++n) terms.push_back({24 * n, 0, tau2_numerator(t, n)});
  const QZSeries rhs = QZSeries::from_terms(std::move(terms), 24 * Q);
  if (auto m = compare_series(scale_by(eta, 276480), rhs, 24 * Q, 276480, "class_sum")) {
    return finish(IdentityId::tau2, q_range(Q), std::move(m));
  }
  const QZSeries moment = z_moment(psi29(24 * Q + 48), 6);
  return finish(IdentityId::tau2, q_range(Q),
                compare_series(scale_by(eta, 23040), moment, 24 * Q, 23040, "psi_moment"));
}

VerificationReport check_psi_decomp(const ClassTable& t, i64 Q) {
  const QZSeries lhs = scale_by(psi29(24 * Q + 48), 12);
  const QZSeries hs = class_jacobi_series(t, ClassSeriesKind::H, 9 * Q);
  const QZSeries h3z = scale_z(hs, 3);
  const QZSeries hv9 = vl_action(hs, 9, 2, 2);
  const std::array<LinearTerm, 2> parts{{{Ratio::of(13), h3z}, {Ratio::of(-1), hv9}}};
  if (auto m = compare_series(lhs, linear_combine(parts, 1), 24 * Q, 12, "operator")) {
    return finish(IdentityId::psi_decomp, q_range(Q), std::move(m));
  }
  // The same right-hand side written out as a double sum.
  std::vector<Term> terms;
  for (i64 n = 0; n <= Q; ++n) {
    const i64 R = isqrt(36 * n);
    for (i64 r = -R; r <= R; ++r) {
      const i64 D = 36 * n - r * r;
      i64 c = (r % 3 == 0) ? checked::mul(13, t.h2(D / 9)) : 0;
      for (i64 a : {1, 3, 9}) {
        if (n % a == 0 && r % a == 0) c = checked::sub(c, checked::mul(a, t.h2(D / (a * a))));
      }
      terms.push_back({24 * n, 2 * r, c});
    }
  }
  return finish(IdentityId::psi_decomp, q_range(Q),
                compare_series(lhs, QZSeries::from_terms(std::move(terms), 24 * Q), 24 * Q, 12, "explicit"));
}

VerificationReport check_h0h1_printed(const ClassTable& t) {
  struct Printed {
    const char* route;
    QZSeries computed;
    std::vector<Term> literal;
    i64 through;  // complete through q^through
  };
  std::vector<Printed> cases;
  {
    std::vector<Term> l;
    add_symmetric(l, 0, 0, 1);
    add_symmetric(l, 1, 2, 1);
    add_symmetric(l, 1, 0, 6);
    add_symmetric(l, 2, 2, 6);
    add_symmetric(l, 2, 0, 12);
    cases.push_back({"H0", class_jacobi_series(t, ClassSeriesKind::H0, 2), l, 2});
  }
  {
    std::vector<Term> l;
    add_symmetric(l, 1, 1, 8);
    add_symmetric(l, 3, 3, 8);
    add_symmetric(l, 3, 1, 24);
    cases.push_back({"H1", class_jacobi_series(t, ClassSeriesKind::H1, 4), l, 4});
  }
  {
    std::vector<Term> l;
    add_symmetric(l, 0, 0, 1);
    add_symmetric(l, 2, 4, 6);
    add_symmetric(l, 2, 0, 12);
    const QZSeries h0 = class_jacobi_series(t, ClassSeriesKind::H0, 4);
    cases.push_back({"H0|V2(2tau,2z)", rescale_tau(scale_z(vl_action(h0, 2, 2, 4), 2), 2), l, 3});
  }
  {
    std::vector<Term> l;
    add_symmetric(l, 0, 0, 1);
    add_symmetric(l, 1, 4, 1);
    add_symmetric(l, 1, 0, 6);
    cases.push_back({"H0(tau,2z)", scale_z(class_jacobi_series(t, ClassSeriesKind::H0, 1), 2), l, 1});
  }
  {
    std::vector<Term> l;
    add_symmetric(l, 1, 2, 8);
    cases.push_back({"H1(tau,2z)", scale_z(class_jacobi_series(t, ClassSeriesKind::H1, 2), 2), l, 2});
  }
  for (auto& c : cases) {
    const QZSeries literal = QZSeries::from_terms(c.literal, 24 * c.through);
    if (auto m = compare_series(c.computed, literal, 24 * c.through, 1, c.route)) {
      return finish(IdentityId::h0h1_printed, "printed terms", std::move(m));
    }
  }
  return finish(IdentityId::h0h1_printed, "printed terms", std::nullopt);
}

VerificationReport check_thm11(const ClassTable& t, i64 Q) {
  const std::array<i64, 4> ones{1, 1, 1, 1};
  const std::string range = "m=1.." + std::to_string(kThm11MaxM) + ", N=0.." + std::to_string(Q);
  for (i64 m = 1; m <= kThm11MaxM; ++m) {
    const auto counts = rep_count_table(m + 2, ones, Q);
    for (i64 N = 0; N <= Q; ++N) {
      const RepCount formula = r4_formula(t, m, N);
      const RepCount count = counts[static_cast<std::size_t>(N)];
      if (count != formula) {
        return finish(IdentityId::thm11, range, Mismatch{{{"m", m}, {"N", N}}, count, formula, 1, "enumeration"});
      }
    }
  }
  return finish(IdentityId::thm11, range, std::nullopt);
}

VerificationReport check_thm14(const ClassTable& t, i64 Q) {
  const i64 extra_n = std::min(Q, kThm14ExtraN);
  const std::string range = "m=0.." + std::to_string(kThm14MaxM) + " with n=1.." + std::to_string(Q) + "; m=" +
                            std::to_string(kThm14ExtraM) + " with n=1.." + std::to_string(extra_n);
  std::vector<std::pair<i64, i64>> grid;  // (m, n_max)
  for (i64 m = 0; m <= kThm14MaxM; ++m) grid.emplace_back(m, Q);
  grid.emplace_back(kThm14ExtraM, extra_n);
  for (const auto& [m, n_max] : grid) {
    if (n_max < 1) continue;
    const RhoTable counts(n_max, m);
    for (i64 n = 1; n <= n_max; ++n) {
      const i64 R = isqrt_ceil(n * m);
      for (i64 r = -R; r <= R; ++r) {
        const RhoCount formula = rho_formula(t, n, r, m);
        const RhoCount count = counts.at(n, r);
        if (count != formula) {
          return finish(IdentityId::thm14, range,
                        Mismatch{{{"m", m}, {"n", n}, {"r", r}}, count, formula, 1, "enumeration"});
        }
      }
    }
  }
  return finish(IdentityId::thm14, range, std::nullopt);
}

VerificationReport check_app1133(const ClassTable& t, i64 Q) {
  const QZSeries g = theta_1133(24 * Q + 24);
  // Printed leading term (zeta^{+-4} - 2 zeta^{+-3} + zeta^{+-2} - 2 zeta^{+-1} + 4) q + O(q^2).
  {
    std::vector<Term> l;
    add_symmetric(l, 1, 4, 1);
    add_symmetric(l, 1, 3, -2);
    add_symmetric(l, 1, 2, 1);
    add_symmetric(l, 1, 1, -2);
    add_symmetric(l, 1, 0, 4);
    if (auto m = compare_series(g, QZSeries::from_terms(std::move(l), 24), 24, 1, "printed")) {
      return finish(IdentityId::app1133, q_range(Q), std::move(m));
    }
  }
  const QZSeries lhs = scale_by(g, 12);
  const QZSeries hs = class_jacobi_series(t, ClassSeriesKind::Hstar, 4 * Q);
  const QZSeries h2z = scale_z(hs, 2);
  const QZSeries hv4 = vl_action(hs, 4, 2, 3);
  const std::array<LinearTerm, 2> parts{{{Ratio::of(7), h2z}, {Ratio::of(-1), hv4}}};
  if (auto m = compare_series(lhs, linear_combine(parts, 1), 24 * Q, 12, "operator")) {
    return finish(IdentityId::app1133, q_range(Q), std::move(m));
  }
  std::vector<Term> terms;
  for (i64 n = 0; n <= Q; ++n) {
    for (i64 r = -isqrt(4 * n); r * r <= 4 * n; ++r) {
      terms.push_back({24 * n, 4 * r, checked::mul(7, t.h3(4 * n - r * r))});
    }
    for (i64 r = -isqrt(16 * n); r * r <= 16 * n; ++r) {
      terms.push_back({24 * n, 2 * r, checked::neg(t.h3(16 * n - r * r))});
    }
    if (2 * n <= Q) {
      for (i64 r = -isqrt(8 * n); r * r <= 8 * n; ++r) {
        terms.push_back({48 * n, 4 * r, checked::mul(-2, t.h3(8 * n - r * r))});
      }
    }
    if (4 * n <= Q) {
      for (i64 r = -isqrt(4 * n); r * r <= 4 * n; ++r) {
        terms.push_back({96 * n, 8 * r, checked::mul(-4, t.h3(4 * n - r * r))});
      }
    }
  }
  return finish(IdentityId::app1133, q_range(Q),
                compare_series(lhs, QZSeries::from_terms(std::move(terms), 24 * Q), 24 * Q, 12, "explicit"));
}

VerificationReport check_app_rstar(const ClassTable& t, i64 Q) {
  const std::array<i64, 4> coeffs{1, 1, 3, 3};
  const std::string range = "m=1.." + std::to_string(kRstarMaxM) + ", N=0.." + std::to_string(Q);
  for (i64 m = 1; m <= kRstarMaxM; ++m) {
    const auto counts = rep_count_table(m + 2, coeffs, Q);
    for (i64 N = 0; N <= Q; ++N) {
      const RepCount formula = rstar_formula(t, m, N);
      const RepCount count = counts[static_cast<std::size_t>(N)];
      if (count != formula) {
        return finish(IdentityId::app_rstar, range, Mismatch{{{"m", m}, {"N", N}}, count, formula, 1, "enumeration"});
      }
    }
  }
  return finish(IdentityId::app_rstar, range, std::nullopt);
}

VerificationReport check_app_eta2(const ClassTable& t, i64 Q) {
  const std::array<EtaFactor, 2> f{{{1, 2}, {3, 2}}};
  const QZSeries eta = shift_q(eta_product(f, 24 * Q + 8), -8);
  if (auto m = compare_series(scale_by(eta, 12), eta2_class_side(t, Q), 24 * Q, 12, "class_sum")) {
    return finish(IdentityId::app_eta2, q_range(Q), std::move(m));
  }
  // theta(3tau,2tau)^2 theta(9tau,6tau)^2 = q^(-16/3) eta(tau)^2 eta(3tau)^2 = q^(-5) prod.
  const i64 src = substitution_source_bound(Ratio::of(4, 3), 2, 24 * Q - 120);
  const QZSeries g = rescale_tau(theta_1133(ceil_div(src, 3) + 24), 3);
  const QZSeries sub = shift_q(substitute_z(g, 2, 0), 120);
  return finish(IdentityId::app_eta2, q_range(Q), compare_series(eta, sub, 24 * Q, 1, "substitution"));
}

VerificationReport check_app_eta6(const ClassTable& t, i64 Q) {
  const std::array<EtaFactor, 2> f{{{1, 6}, {3, 6}}};
  const QZSeries eta = eta_product(f, 24 * Q);
  auto h3 = [&](i64 D) { return t.h3(D); };
  // 2592 = 216 * 12; the printed weights 14/27, 1/216, 4/27, 32/27 become
  // 112, 1, 32, 256 against 12 H3.
  constexpr std::array<i64, 4> w{112, -1, -32, -256};
  std::vector<Term> terms;
  for (i64 n = 1; n <= Q; ++n) {
    terms.push_back({24 * n, 0, checked::mul(w[0], moment_sum(4, n, 4, h3))});
    terms.push_back({24 * n, 0, checked::mul(w[1], moment_sum(16, n, 4, h3))});
    if (2 * n <= Q) terms.push_back({48 * n, 0, checked::mul(w[2], moment_sum(8, n, 4, h3))});
    if (4 * n <= Q) terms.push_back({96 * n, 0, checked::mul(w[3], moment_sum(4, n, 4, h3))});
  }
  if (auto m = compare_series(scale_by(eta, 2592), QZSeries::from_terms(std::move(terms), 24 * Q), 24 * Q, 2592,
                              "printed")) {
    return finish(IdentityId::app_eta6, q_range(Q), std::move(m));
  }
  const QZSeries moment = z_moment(theta_1133(24 * Q + 24), 4);
  return finish(IdentityId::app_eta6, q_range(Q), compare_series(scale_by(eta, 216), moment, 24 * Q, 216, "moment"));
}

VerificationReport check_h2_defs(const ClassTable& t, i64 Q) {
  const std::string range = "D=1.." + std::to_string(Q);
  for (i64 D = 1; D <= Q; ++D) {
    if (D % 4 == 1 || D % 4 == 2) continue;
    const ScaledH a = t.h2(D);
    const ScaledH b = t.h2_alt(D);
    if (a != b) return finish(IdentityId::h2_defs, range, Mismatch{{{"D", D}}, a, b, 12, "definitions"});
  }
  return finish(IdentityId::h2_defs, range, std::nullopt);
}

template <class F>
auto with_identity(IdentityId id, F&& f) {
  const std::string prefix = std::string(to_string(id)) + ": ";
  try {
    return f();
  } catch (const OutOfTableError& e) {
    throw OutOfTableError(prefix + e.what());
  } catch (const TruncationError& e) {
    throw TruncationError(prefix + e.what());
  } catch (const CoverageError& e) {
    throw CoverageError(prefix + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError(prefix + e.what());
  } catch (const OverflowError& e) {
    throw OverflowError(prefix + e.what());
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

i64 resolve_qmax(IdentityId id, const IdentityParams& params) {
  const i64 q = params.qmax.value_or(default_qmax(id));
  if (q < 0) throw DomainError(std::string(to_string(id)) + ": qmax must be nonnegative");
  return q;
}

}  // namespace

std::string_view to_string(IdentityId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "unknown";
}

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::span<const IdentityId> all_identities() { return kAll; }

i64 default_qmax(IdentityId id) {
  switch (id) {
    case IdentityId::power4: return 201;
    case IdentityId::basis_combination: return 100;
    case IdentityId::eta4: return 300;
    case IdentityId::eta12: return 301;
    case IdentityId::tau2: return 100;
    case IdentityId::psi_decomp: return 100;
    case IdentityId::h0h1_printed: return 0;
    case IdentityId::thm11: return 300;
    case IdentityId::thm14: return 40;
    case IdentityId::app1133: return 150;
    case IdentityId::app_rstar: return 150;
    case IdentityId::app_eta2: return 200;
    case IdentityId::app_eta6: return 200;
    case IdentityId::h2_defs: return 100000;
  }
  return 0;
}

i64 required_table(IdentityId id, const IdentityParams& params) {
  const i64 Q = resolve_qmax(id, params);
  switch (id) {
    case IdentityId::power4:
    case IdentityId::eta12: return checked::mul(16, Q);
    case IdentityId::basis_combination: return class_series_table_need(ClassSeriesKind::H0, Q + 1);
    case IdentityId::eta4: return eta4_table_need(Q);
    case IdentityId::tau2:
    case IdentityId::psi_decomp:
    case IdentityId::app1133:
    case IdentityId::app_eta6: return checked::mul(144, Q);
    case IdentityId::h0h1_printed: return class_series_table_need(ClassSeriesKind::H0, 4);
    case IdentityId::thm11: {
      i64 need = 0;
      for (i64 m = 1; m <= kThm11MaxM; ++m) {
        for (i64 N = 0; N <= Q; ++N) need = std::max(need, r4_formula_table_need(m, N));
      }
      return need;
    }
    case IdentityId::thm14:
      return std::max(rho_formula_table_need(Q, kThm14MaxM),
                      rho_formula_table_need(std::min(Q, kThm14ExtraN), kThm14ExtraM));
    case IdentityId::app_rstar: {
      i64 need = 0;
      for (i64 m = 1; m <= kRstarMaxM; ++m) {
        for (i64 N = 0; N <= Q; ++N) need = std::max(need, rstar_formula_table_need(m, N));
      }
      return need;
    }
    case IdentityId::app_eta2: return eta2_table_need(Q);
    case IdentityId::h2_defs: return checked::mul(4, Q);
  }
  return 0;
}

i64 tau2_numerator(const ClassTable& t, i64 n) {
  if (n < 1) throw DomainError("tau2_numerator needs n >= 1");
  i64 total = 0;
  const i64 R = isqrt(checked::mul(36, n));
  for (i64 r = -R; r <= R; ++r) {
    const i64 D = 36 * n - r * r;
    const i64 r6 = checked::pow(r, 6);
    if (r % 3 == 0) total = checked::add(total, checked::mul(13, checked::mul(r6, t.h2(D / 9))));
    for (i64 a : {1, 3, 9}) {
      if (n % a != 0 || r % a != 0) continue;
      total = checked::sub(total, checked::mul(a, checked::mul(r6, t.h2(D / (a * a)))));
    }
  }
  return total;
}

VerificationReport run_identity(IdentityId id, const IdentityParams& params, const ClassTable& table) {
  return with_identity(id, [&] {
    const i64 Q = resolve_qmax(id, params);
    if (table.d_max() < required_table(id, params)) {
      throw OutOfTableError("class table reaches D=" + std::to_string(table.d_max()) + ", need " +
                            std::to_string(required_table(id, params)));
    }
    switch (id) {
      case IdentityId::power4: return check_power4(table, Q);
      case IdentityId::basis_combination: return check_basis_combination(table, Q);
      case IdentityId::eta4: return check_eta4(table, Q);
      case IdentityId::eta12: return check_eta12(table, Q);
      case IdentityId::tau2: return check_tau2(table, Q);
      case IdentityId::psi_decomp: return check_psi_decomp(table, Q);
      case IdentityId::h0h1_printed: return check_h0h1_printed(table);
      case IdentityId::thm11: return check_thm11(table, Q);
      case IdentityId::thm14: return check_thm14(table, Q);
      case IdentityId::app1133: return check_app1133(table, Q);
      case IdentityId::app_rstar: return check_app_rstar(table, Q);
      case IdentityId::app_eta2: return check_app_eta2(table, Q);
      case IdentityId::app_eta6: return check_app_eta6(table, Q);
      case IdentityId::h2_defs: return check_h2_defs(table, Q);
    }
    throw DomainError("unknown identity");
  });
}

VerificationReport run_identity(IdentityId id, const IdentityParams& params) {
  const ClassTable table(with_identity(id, [&] { return required_table(id, params); }));
  return run_identity(id, params, table);
}

i64 required_table_all() {
  i64 need = 0;
  for (IdentityId id : kAll) need = std::max(need, required_table(id));
  return need;
}

std::vector<VerificationReport> run_all(const ClassTable& table) {
  std::vector<std::optional<VerificationReport>> slots(kAll.size());
  detail::FirstError failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < kAll.size(); ++i) {
    failure.run([&] { slots[i] = run_identity(kAll[i], {}, table); });
  }
  failure.rethrow();
  std::vector<VerificationReport> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<VerificationReport> run_all() { return run_all(ClassTable(required_table_all())); }

std::string to_json(const VerificationReport& report) {
  auto value = [](GaussInt z) -> nlohmann::json {
    if (z.im == 0) return z.re;
    return to_string(z);
  };
  nlohmann::json j;
  j["identity"] = std::string(to_string(report.identity));
  j["range"] = report.range;
  j["status"] = report.pass ? "pass" : "fail";
  if (report.first_mismatch) {
    const Mismatch& m = *report.first_mismatch;
    nlohmann::json mm;
    for (const auto& [name, v] : m.coords) mm[name] = v;
    mm["lhs"] = value(m.lhs);
    mm["rhs"] = value(m.rhs);
    mm["scale"] = m.scale;
    mm["route"] = m.route;
    j["first_mismatch"] = mm;
  } else {
    j["first_mismatch"] = nullptr;
  }
  return j.dump();
}

}  // namespace fourpoly
