#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fourpoly/error.hpp"
#include "fourpoly/foursquares.hpp"
#include "fourpoly/polygonal.hpp"

using namespace fourpoly;

namespace {

// Every pair (u, v) with |u|^2 = n, |v|^2 = m, straight from a box scan.
i64 pairs_direct(i64 n, i64 r, i64 m) {
  auto points = [](i64 k) {
    std::vector<Vec4> out;
    i64 b = 0;
    while ((b + 1) * (b + 1) <= k) ++b;
    for (i64 x = -b; x <= b; ++x)
      for (i64 y = -b; y <= b; ++y)
        for (i64 z = -b; z <= b; ++z)
          for (i64 w = -b; w <= b; ++w)
            if (x * x + y * y + z * z + w * w == k) out.push_back({x, y, z, w});
    return out;
  };
  const auto U = points(n), V = points(m);
  i64 count = 0;
  for (const auto& u : U)
    for (const auto& v : V)
      if (u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3] == r) ++count;
  return count;
}

bool is_power_of_4(i64 x) {
  if (x < 1) return false;
  while (x % 4 == 0) x /= 4;
  return x == 1;
}

}  // namespace

TEST_CASE("orbits") {
  const auto o9 = sphere_orbits(9);
  REQUIRE(o9.size() == 2);
  CHECK(o9[0] == OrbitInfo{{2, 2, 1, 0}, 96});
  CHECK(o9[1] == OrbitInfo{{3, 0, 0, 0}, 8});
  CHECK(sphere_orbits(0) == std::vector<OrbitInfo>{{{0, 0, 0, 0}, 1}});
  CHECK(sphere_orbits(1) == std::vector<OrbitInfo>{{{1, 0, 0, 0}, 8}});
  CHECK_THROWS_AS(sphere_orbits(-1), DomainError);
  for (i64 m = 0; m <= 100; ++m) {
    i64 total = 0;
    std::set<Vec4> seen;
    for (const auto& o : sphere_orbits(m)) {
      const auto elems = orbit_elements(o.rep);
      CHECK(static_cast<i64>(elems.size()) == o.size);
      for (const auto& e : elems) CHECK(seen.insert(e).second);
      total += o.size;
    }
    const auto pts = sphere_points(m);
    CHECK(static_cast<i64>(pts.size()) == total);
    CHECK(std::set<Vec4>(pts.begin(), pts.end()) == seen);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
  }
}

TEST_CASE("rho examples") {
  CHECK(rho_enum(1, 0, 0) == 8);
  CHECK(rho_enum(1, 1, 1) == 8);
  CHECK(rho_enum(2, 0, 2) == 144);
  ClassTable t(16 * 40 * 16);
  CHECK(rho_formula(t, 1, 0, 0) == 8);
  CHECK(rho_formula(t, 2, 0, 2) == 144);
  CHECK(rho_v({1, 0, 0, 0}, 1, 1) == 1);
  CHECK(rho_v({1, 1, 0, 0}, 2, 0) == 6);  // (1,-1,0,0), (-1,1,0,0), (0,0,+-1,+-1)
}

TEST_CASE("rho against pair enumeration") {
  for (i64 m = 0; m <= 6; ++m)
    for (i64 n = 1; n <= 8; ++n)
      for (i64 r = -8; r <= 8; ++r) {
        INFO(n << " " << r << " " << m);
        CHECK(rho_enum(n, r, m) == pairs_direct(n, r, m));
      }
}

TEST_CASE("rho table, formula and symmetries") {
  ClassTable t(rho_formula_table_need(30, 12));
  for (i64 m = 0; m <= 12; ++m) {
    RhoTable table(30, m);
    for (i64 n = 1; n <= 30; ++n) {
      for (i64 r = -20; r <= 20; ++r) {
        const i64 e = rho_enum(n, r, m);
        CHECK(table.at(n, r) == e);
        CHECK(rho_formula(t, n, r, m) == e);
        CHECK(rho_enum(n, -r, m) == e);
        if (m >= 1 && n <= 12) CHECK(rho_enum(m, r, n) == e);
      }
    }
  }
  CHECK_THROWS_AS(RhoTable(3, 1).at(4, 0), DomainError);
  CHECK_THROWS_AS(rho_formula(ClassTable(10), 10, 0, 10), OutOfTableError);
}

TEST_CASE("rho and three squares") {
  ClassTable t(rho_formula_table_need(500, 1));
  for (i64 n = 1; n <= 500; ++n) CHECK(rho_formula(t, n, 0, 1) == 8 * three_square_count(t, n));
}

TEST_CASE("lemma search") {
  ClassTable t(16 * 4096);  // H2(4x) reads H(16x)
  auto none = [&](i64 D) {
    const auto res = lemma_search(t, D, 3);
    CHECK(res.definitive);
    return !res.s.has_value();
  };
  CHECK(none(8));
  CHECK(none(128));
  CHECK_FALSE(none(127));
  CHECK(lemma_search(t, 1, 0).s == 0);
  for (i64 D = 1; D <= 4096; ++D) CHECK(none(D) == (D == 8 || D == 128 || D == 2048));
  const auto cut = lemma_search(t, 2048, 1);
  CHECK_FALSE(cut.s.has_value());
  CHECK_FALSE(cut.definitive);
  CHECK_THROWS_AS(lemma_search(t, 0, 3), DomainError);
  CHECK_THROWS_AS(lemma_search(t, 5000, 0), OutOfTableError);
}

TEST_CASE("witness search: serial and meet-in-the-middle agree") {
  std::vector<Vec4> vs(sun_part1_vectors().begin(), sun_part1_vectors().end());
  vs.insert(vs.end(), sun_part2_vectors().begin(), sun_part2_vectors().end());
  vs.push_back({3, 0, 0, 0});
  vs.push_back({1, -2, 0, 3});
  for (const Vec4& v : vs) {
    const SunReport rep = sun_verify(v, 200, 4);
    std::size_t wi = 0, fi = 0;
    for (i64 n = 1; n <= 200; ++n) {
      const auto w = sun_witness(v, n, 4);
      if (w) {
        REQUIRE(wi < rep.witnesses.size());
        CHECK(rep.witnesses[wi++] == *w);
        CHECK(w->x * w->x + w->y * w->y + w->z * w->z + w->w * w->w == n);
        CHECK(is_power_of_4(v[0] * w->x + v[1] * w->y + v[2] * w->z + v[3] * w->w));
      } else {
        REQUIRE(fi < rep.not_found.size());
        CHECK(rep.not_found[fi++].n == n);
      }
    }
    CHECK(wi == rep.witnesses.size());
    CHECK(fi == rep.not_found.size());
  }
}

TEST_CASE("witness examples") {
  CHECK_FALSE(sun_witness({1, 0, 0, 0}, 8, 5).has_value());
  CHECK(sun_witness({1, 0, 0, 0}, 7, 5).has_value());
  const SunReport r = sun_verify({3, 0, 0, 0}, 50, 4);
  CHECK(r.witnesses.empty());
  CHECK(r.not_found.size() == 50);
  const SunReport one = sun_verify({1, 0, 0, 0}, 8, 1);
  REQUIRE(one.not_found.size() == 1);
  CHECK(one.not_found[0] == NotFound{8, true});
  CHECK(sun_part1_vectors().size() == 11);
  CHECK(sun_part2_vectors().size() == 3);
}
