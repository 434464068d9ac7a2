#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fourpoly/error.hpp"
#include "fourpoly/polygonal.hpp"

using namespace fourpoly;

namespace {

// Plain nested loops over a generous box; no bounds from the library.
i64 brute4(i64 order, const std::vector<i64>& c, i64 N) {
  const i64 B = N + 2;
  std::vector<i64> vals;
  for (i64 l = -B; l <= B; ++l)
    if (pgon(order, l) <= N) vals.push_back(pgon(order, l));
  i64 count = 0;
  for (i64 a : vals)
    for (i64 b : vals)
      for (i64 x : vals) {
        const i64 rest = N - c[0] * a - c[1] * b - c[2] * x;
        if (rest < 0) continue;
        for (i64 y : vals)
          if (c[3] * y == rest) ++count;
      }
  return count;
}

i64 brute_unordered(i64 order, i64 N) {
  std::set<i64> s;
  for (i64 l = -N - 2; l <= N + 2; ++l)
    if (pgon(order, l) <= N) s.insert(pgon(order, l));
  const std::vector<i64> v(s.begin(), s.end());
  i64 count = 0;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a; b < v.size(); ++b)
      for (std::size_t c = b; c < v.size(); ++c)
        for (std::size_t d = c; d < v.size(); ++d)
          if (v[a] + v[b] + v[c] + v[d] == N) ++count;
  return count;
}

}  // namespace

TEST_CASE("generalized polygonal numbers") {
  CHECK(pgon(3, 1) == 1);
  CHECK(pgon(3, -1) == 0);
  CHECK(pgon(3, 2) == 3);
  CHECK(pgon(4, -3) == 9);
  CHECK(pgon(5, 1) == 1);
  CHECK(pgon(5, -1) == 2);
  CHECK(pgon(5, 2) == 5);
  CHECK(pgon(5, -2) == 7);
  CHECK(pgon(8, 1) == 1);
  CHECK(pgon(8, -1) == 5);
  CHECK(pgon(8, 2) == 8);
  CHECK(pgon(8, -2) == 16);
  CHECK_THROWS_AS(pgon(2, 1), DomainError);
  for (i64 order = 3; order <= 12; ++order) {
    for (i64 coeff : {1, 3}) {
      const i64 b = pgon_search_bound(order, coeff, 500);
      for (i64 l = -600; l <= 600; ++l)
        if (coeff * pgon(order, l) <= 500) CHECK(std::abs(l) <= b);
    }
  }
}

TEST_CASE("enumeration against nested loops") {
  for (i64 order : {3, 4, 5, 8}) {
    for (const std::vector<i64>& c : {std::vector<i64>{1, 1, 1, 1}, {1, 1, 3, 3}, {1, 2, 3, 4}}) {
      for (i64 N = 0; N <= 25; ++N) {
        INFO("order " << order << " N " << N);
        CHECK(enum_reps(order, c, N) == brute4(order, c, N));
      }
    }
  }
  const i64 bad[] = {1, 0};
  CHECK_THROWS_AS(enum_reps(5, bad, 3), DomainError);
}

TEST_CASE("table agrees with per-N enumeration") {
  for (i64 order : {3, 5, 7, 10}) {
    const i64 c[] = {1, 1, 2, 3};
    const auto table = rep_count_table(order, c, 300);
    REQUIRE(table.size() == 301);
    for (i64 N = 0; N <= 300; N += 7) CHECK(table[N] == enum_reps(order, c, N));
  }
}

TEST_CASE("Jacobi four squares") {
  const i64 ones[] = {1, 1, 1, 1};
  const auto r4 = rep_count_table(4, ones, 1000);
  for (i64 N = 1; N <= 1000; ++N) CHECK(jacobi_r44(N) == r4[N]);
  CHECK(jacobi_r44(1) == 8);
  CHECK(jacobi_r44(4) == 24);
  CHECK_THROWS_AS(jacobi_r44(0), DomainError);
}

TEST_CASE("four-polygonal class-number formula") {
  i64 need = 0;
  for (i64 m = 1; m <= 10; ++m) need = std::max(need, r4_formula_table_need(m, 200));
  ClassTable t(need);
  const i64 ones[] = {1, 1, 1, 1};
  for (i64 m = 1; m <= 10; ++m) {
    const auto table = rep_count_table(m + 2, ones, 200);
    for (i64 N = 0; N <= 200; ++N) {
      INFO("m " << m << " N " << N);
      CHECK(r4_formula(t, m, N) == table[N]);
    }
  }
  for (const auto& term : r4_formula_terms(t, 3, 40)) {
    CHECK(term.n % 2 == 1);
    CHECK(2 * term.r == 3 * (term.n - 1) + 4 - 2 * 40);
    CHECK(4 * term.n - term.r * term.r >= 0);
  }
  CHECK_THROWS_AS(r4_formula(t, 0, 5), DomainError);
  CHECK_THROWS_AS(r4_formula(ClassTable(10), 3, 200), OutOfTableError);
}

TEST_CASE("ternary forms") {
  ClassTable t(32 * 2000);  // H2(8N) reads H(32N)
  const i64 c111[] = {1, 1, 1}, c112[] = {1, 1, 2};
  const auto r3 = rep_count_table(4, c111, 2000);
  const auto r112 = rep_count_table(4, c112, 2000);
  for (i64 N = 1; N <= 2000; ++N) {
    CHECK(three_square_count(t, N) == r3[N]);
    CHECK(xxyy2z_count(t, N) == r112[N]);
  }
}

TEST_CASE("R* formula") {
  i64 need = 0;
  for (i64 m = 1; m <= 8; ++m) need = std::max(need, rstar_formula_table_need(m, 150));
  ClassTable t(need);
  const i64 c[] = {1, 1, 3, 3};
  for (i64 m = 1; m <= 8; ++m) {
    const auto table = rep_count_table(m + 2, c, 150);
    for (i64 N = 0; N <= 150; ++N) {
      INFO("m " << m << " N " << N);
      CHECK(rstar_formula(t, m, N) == table[N]);
    }
  }
}

TEST_CASE("unordered representations") {
  for (i64 order : {3, 5, 8}) {
    for (i64 N = 0; N <= 60; ++N) CHECK(unordered_reps(order, 4, N) == brute_unordered(order, N));
  }
  CHECK(octagonal_unordered(1) == 1);
  CHECK(octagonal_unordered(2) == 1);
  CHECK(octagonal_unordered(0) == 1);
  CHECK_THROWS_AS(unordered_reps(8, 0, 3), DomainError);
}
