#include <doctest.h>

#include <json.hpp>

#include "fourpoly/error.hpp"
#include "fourpoly/verify.hpp"

using namespace fourpoly;

TEST_CASE("identity names round trip") {
  CHECK(all_identities().size() == 14);
  for (IdentityId id : all_identities()) CHECK(parse_identity(to_string(id)) == id);
  CHECK_FALSE(parse_identity("nope").has_value());
  CHECK(to_string(IdentityId::h2_defs) == "h2_defs");
}

TEST_CASE("every identity except the sextic eta product passes at small bounds") {
  for (IdentityId id : all_identities()) {
    IdentityParams p;
    if (default_qmax(id) > 0) p.qmax = std::min<i64>(default_qmax(id), id == IdentityId::h2_defs ? 5000 : 30);
    const auto rep = run_identity(id, p);
    INFO(to_json(rep));
    if (id == IdentityId::app_eta6) {
      CHECK_FALSE(rep.pass);
    } else {
      CHECK(rep.pass);
      CHECK_FALSE(rep.first_mismatch.has_value());
    }
  }
}

TEST_CASE("printed sextic coefficient fails first at q^4") {
  const auto rep = run_identity(IdentityId::app_eta6, {});
  REQUIRE(rep.first_mismatch.has_value());
  const Mismatch& m = *rep.first_mismatch;
  CHECK(m.coords == std::vector<std::pair<std::string, i64>>{{"n24", 96}, {"r2", 0}});
  CHECK(m.lhs == GaussInt(10368));
  CHECK(m.rhs == GaussInt(65664));
  CHECK(m.scale == 2592);
  CHECK(m.route == "printed");
  // at q^3 and below both sides still agree
  CHECK(run_identity(IdentityId::app_eta6, {3}).pass);
}

TEST_CASE("tau_2 numerators") {
  ClassTable t(required_table(IdentityId::tau2, {20}));
  CHECK(tau2_numerator(t, 1) == 276480);
  // eta(tau)^8 eta(2tau)^8 = q - 8q^2 + 12q^3 + 64q^4 - 210q^5 ...
  CHECK(tau2_numerator(t, 2) == -8 * 276480);
  CHECK(tau2_numerator(t, 3) == 12 * 276480);
  CHECK(tau2_numerator(t, 4) == 64 * 276480);
  CHECK(tau2_numerator(t, 5) == -210 * 276480);
}

TEST_CASE("coverage problems are reported, not papered over") {
  ClassTable small(50);
  CHECK_THROWS_AS(run_identity(IdentityId::power4, {201}, small), OutOfTableError);
  try {
    run_identity(IdentityId::thm11, {100}, small);
    FAIL("expected a coverage error");
  } catch (const CoverageError& e) {
    CHECK(std::string(e.what()).find("thm11") != std::string::npos);
  }
  CHECK(required_table(IdentityId::power4, {201}) > required_table(IdentityId::power4, {21}));
}

TEST_CASE("report JSON") {
  const auto rep = run_identity(IdentityId::power4, {11});
  CHECK(to_json(rep) == R"({"first_mismatch":null,"identity":"power4","range":"q^0..q^11","status":"pass"})");
  VerificationReport fake{IdentityId::thm14, "x", false, Mismatch{{{"m", 3}, {"n", 2}, {"r", -1}}, GaussInt(1, 2), 5, 12, "enum"}};
  const auto j = nlohmann::json::parse(to_json(fake));
  CHECK(j["status"] == "fail");
  CHECK(j["first_mismatch"]["r"] == -1);
  CHECK(j["first_mismatch"]["lhs"] == to_string(GaussInt(1, 2)));
  CHECK(j["first_mismatch"]["rhs"] == 5);
}

TEST_CASE("run_all keeps identity order and is deterministic") {
  ClassTable t(required_table_all());
  const auto a = run_all(t);
  const auto b = run_all(t);
  REQUIRE(a.size() == all_identities().size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].identity == all_identities()[i]);
    CHECK(to_json(a[i]) == to_json(b[i]));
    CHECK(a[i].pass == (a[i].identity != IdentityId::app_eta6));
  }
}
