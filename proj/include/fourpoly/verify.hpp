#pragma once

// Exact coefficient-by-coefficient checks of the closed formulas and q-series
// identities. Each identity compares a series-engine (or enumeration) side
// with a class-number side at one declared integer scale.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fourpoly/hurwitz.hpp"
#include "fourpoly/qseries.hpp"

namespace fourpoly {

enum class IdentityId {
  power4,
  basis_combination,
  eta4,
  eta12,
  tau2,
  psi_decomp,
  h0h1_printed,
  thm11,
  thm14,
  app1133,
  app_rstar,
  app_eta2,
  app_eta6,
  h2_defs,
};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);
/// Every identity, in id order.
std::span<const IdentityId> all_identities();

struct IdentityParams {
  /// Truncation or grid bound; the meaning is per identity (q-power, N_max,
  /// n_max or D_max). Empty means the default.
  std::optional<i64> qmax;
};

/// Default bound; 0 for identities with a fixed range (h0h1_printed).
i64 default_qmax(IdentityId id);

/// Class-table bound d_max that run_identity needs.
i64 required_table(IdentityId id, const IdentityParams& params = {});

struct Mismatch {
  /// Named coordinates, e.g. {"n24", 48}, {"r2", -4} or {"m", 3}, {"N", 17}.
  std::vector<std::pair<std::string, i64>> coords;
  GaussInt lhs;
  GaussInt rhs;
  i64 scale;
  std::string route;  ///< which comparison inside the identity failed
};

struct VerificationReport {
  IdentityId identity;
  std::string range;
  bool pass;
  std::optional<Mismatch> first_mismatch;  ///< present iff !pass
};

/// Throws CoverageError (with the identity named) if `table` is too small
/// or a series is not complete through the requested range.
VerificationReport run_identity(IdentityId id, const IdentityParams& params, const ClassTable& table);
/// Builds a table of exactly required_table(id, params) first.
VerificationReport run_identity(IdentityId id, const IdentityParams& params = {});

/// Every identity at its default bound, run concurrently over one shared
/// table; reports come back in id order.
std::vector<VerificationReport> run_all(const ClassTable& table);
std::vector<VerificationReport> run_all();
/// Table bound covering run_all.
i64 required_table_all();

/// 12 * (13 sum r^6 H2((36n - r^2)/9) - sum sum a r^6 H2((36n - r^2)/a^2));
/// the tau_2 identity says this equals 276480 * tau_2(n).
i64 tau2_numerator(const ClassTable& table, i64 n);

/// {"identity","range","status","first_mismatch"}, keys sorted.
std::string to_json(const VerificationReport& report);

}  // namespace fourpoly
