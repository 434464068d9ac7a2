#include "fourpoly/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fourpoly/foursquares.hpp"
#include "fourpoly/hurwitz.hpp"
#include "fourpoly/polygonal.hpp"
#include "fourpoly/verify.hpp"

namespace fourpoly::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Bad flag values detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<i64> parse_list(const std::string& text, const char* flag) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": not an integer list: " + text);
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

/// Loads the class table from the cache when one is configured and usable;
/// otherwise builds it (and refreshes the cache). Cache problems are warnings.
ClassTable obtain_table(i64 need, const std::string& cache_flag, std::string& err) {
  fs::path path;
  if (!cache_flag.empty()) {
    path = cache_flag;
  } else if (const char* dir = std::getenv(kCacheDirEnv); dir != nullptr && *dir != '\0') {
    path = fs::path(dir) / "classtable.csv";
  }
  if (path.empty()) return ClassTable(need);

  std::error_code ec;
  if (fs::exists(path, ec)) {
    std::ifstream in(path);
    try {
      ClassTable cached = read_class_table(in);
      if (cached.d_max() >= need) return cached;
    } catch (const CacheError& e) {
      err += "warning: rebuilding class-table cache " + path.string() + ": " + e.what() + "\n";
    }
  }
  ClassTable table(need);
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    write_class_table(out, table);
    if (!out) {
      err += "warning: could not write class-table cache " + path.string() + "\n";
      fs::remove(tmp, ec);
      return table;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) err += "warning: could not write class-table cache " + path.string() + ": " + ec.message() + "\n";
  return table;
}

// ---------------------------------------------------------------------------
// hurwitz

struct HurwitzArgs {
  i64 max = 0;
  std::string kind = "h";
  std::string format = "csv";
  std::string cache;
};

CommandResult cmd_hurwitz(const HurwitzArgs& a) {
  if (a.max < 0) throw UsageError("--max must be nonnegative");
  const i64 factor = a.kind == "h" ? 1 : a.kind == "h2" ? 4 : 9;
  CommandResult res;
  const ClassTable table = obtain_table(checked::mul(factor, a.max), a.cache, res.err);
  auto value = [&](i64 D) {
    if (a.kind == "h") return table.h(D);
    if (a.kind == "h2") return table.h2(D);
    return table.h3(D);
  };
  const std::string column = a.kind == "h" ? "12H" : a.kind == "h2" ? "12H2" : "12H3";
  std::ostringstream os;
  if (a.format == "csv") {
    os << "D," << column << '\n';
    for (i64 D = 0; D <= a.max; ++D) os << D << ',' << value(D) << '\n';
  } else {
    json values = json::array();
    for (i64 D = 0; D <= a.max; ++D) values.push_back(value(D));
    json j{{"kind", a.kind}, {"max", a.max}, {"scale", 12}, {"values", values}};
    os << j.dump() << '\n';
  }
  res.out = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// rep polygonal / rep foursquare

struct PolygonalArgs {
  i64 order = 0;
  std::optional<i64> count;
  i64 n = 0;
  std::string coeffs;
  std::string method;
  std::string cache;
};

struct FormulaPlan {
  std::string name;
  i64 need;
  std::function<RepCount(const ClassTable&)> eval;
};

std::optional<FormulaPlan> polygonal_formula(i64 order, const std::vector<i64>& coeffs, i64 N) {
  const i64 m = order - 2;
  if (coeffs == std::vector<i64>{1, 1, 1, 1}) {
    return FormulaPlan{"class_number_r4", r4_formula_table_need(m, N),
                       [=](const ClassTable& t) { return r4_formula(t, m, N); }};
  }
  if (coeffs == std::vector<i64>{1, 1, 3, 3}) {
    return FormulaPlan{"class_number_rstar", rstar_formula_table_need(m, N),
                       [=](const ClassTable& t) { return rstar_formula(t, m, N); }};
  }
  if (order == 4 && coeffs == std::vector<i64>{1, 1, 1}) {
    return FormulaPlan{"three_squares", checked::mul(16, N),
                       [=](const ClassTable& t) { return three_square_count(t, N); }};
  }
  if (order == 4 && coeffs == std::vector<i64>{1, 1, 2}) {
    return FormulaPlan{"xxyy2z", checked::mul(32, N),
                       [=](const ClassTable& t) { return xxyy2z_count(t, N); }};
  }
  return std::nullopt;
}

CommandResult cmd_polygonal(const PolygonalArgs& a) {
  if (a.order < 3) throw UsageError("--order must be at least 3");
  if (a.n < 0) throw UsageError("--n must be nonnegative");
  std::vector<i64> coeffs;
  if (!a.coeffs.empty()) {
    coeffs = parse_list(a.coeffs, "--coeffs");
    for (i64 c : coeffs) {
      if (c <= 0) throw UsageError("--coeffs must be positive");
    }
    if (a.count && *a.count != static_cast<i64>(coeffs.size())) {
      throw UsageError("--count disagrees with the length of --coeffs");
    }
  } else {
    const i64 count = a.count.value_or(4);
    if (count < 1) throw UsageError("--count must be positive");
    coeffs.assign(static_cast<std::size_t>(count), 1);
  }

  const auto plan = polygonal_formula(a.order, coeffs, a.n);
  const std::string method = a.method.empty() ? (plan ? "formula" : "enum") : a.method;
  if (method != "enum" && !plan) throw UsageError("no closed formula for these coefficients; use --method enum");

  CommandResult res;
  json j{{"order", a.order}, {"coeffs", coeffs}, {"N", a.n}, {"method", method}};
  std::optional<RepCount> formula;
  std::optional<RepCount> count;
  if (method != "enum") {
    const ClassTable table = obtain_table(plan->need, a.cache, res.err);
    formula = plan->eval(table);
    j["formula"] = *formula;
    j["formula_kind"] = plan->name;
  }
  if (method != "formula") {
    count = enum_reps(a.order, coeffs, a.n);
    j["enum"] = *count;
  }
  if (std::all_of(coeffs.begin(), coeffs.end(), [](i64 c) { return c == 1; })) {
    j["unordered"] = unordered_reps(a.order, static_cast<i64>(coeffs.size()), a.n);
  }
  if (formula && count) {
    j["agree"] = *formula == *count;
    if (*formula != *count) res.exit_code = kFailure;
  }
  res.out = j.dump() + "\n";
  return res;
}

struct FoursquareArgs {
  i64 n = 0;
  i64 r = 0;
  i64 m = 0;
  std::string method = "formula";
  std::string cache;
};

CommandResult cmd_foursquare(const FoursquareArgs& a) {
  if (a.n < 1) throw UsageError("--n must be positive");
  if (a.m < 0) throw UsageError("--m must be nonnegative");
  CommandResult res;
  json j{{"n", a.n}, {"r", a.r}, {"m", a.m}, {"method", a.method}};
  std::optional<RhoCount> formula;
  std::optional<RhoCount> count;
  if (a.method != "enum") {
    const ClassTable table = obtain_table(rho_formula_table_need(a.n, a.m), a.cache, res.err);
    formula = rho_formula(table, a.n, a.r, a.m);
    j["formula"] = *formula;
  }
  if (a.method != "formula") {
    count = rho_enum(a.n, a.r, a.m);
    j["enum"] = *count;
  }
  if (formula && count) {
    j["agree"] = *formula == *count;
    if (*formula != *count) res.exit_code = kFailure;
  }
  res.out = j.dump() + "\n";
  return res;
}

// ---------------------------------------------------------------------------
// orbits / sun

CommandResult cmd_orbits(i64 m) {
  if (m < 0) throw UsageError("--m must be nonnegative");
  const auto orbits = sphere_orbits(m);
  json list = json::array();
  i64 total = 0;
  for (const auto& o : orbits) {
    list.push_back(json{{"rep", o.rep}, {"size", o.size}});
    total = checked::add(total, o.size);
  }
  json j{{"m", m}, {"t_m", orbits.size()}, {"orbits", list}, {"points", total}};
  return {kOk, j.dump() + "\n", {}};
}

struct SunArgs {
  std::string vector;
  i64 nmax = 0;
  i64 smax = 0;
};

CommandResult cmd_sun(const SunArgs& a) {
  const auto v = parse_list(a.vector, "--vector");
  if (v.size() != 4) throw UsageError("--vector needs exactly four integers");
  if (std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; })) throw UsageError("--vector must be nonzero");
  if (a.nmax < 1) throw UsageError("--nmax must be positive");
  if (a.smax < 0) throw UsageError("--smax must be nonnegative");
  const Vec4 vec{v[0], v[1], v[2], v[3]};
  const SunReport report = sun_verify(vec, a.nmax, a.smax);
  json witnesses = json::array();
  i64 s_used = 0;
  for (const auto& w : report.witnesses) {
    witnesses.push_back(json{{"n", w.n}, {"s", w.s}, {"x", w.x}, {"y", w.y}, {"z", w.z}, {"w", w.w}});
    s_used = std::max(s_used, w.s);
  }
  json missing = json::array();
  for (const auto& nf : report.not_found) missing.push_back(json{{"n", nf.n}, {"exhaustive", nf.exhaustive}});
  json j{{"vector", vec},         {"nmax", a.nmax},         {"smax", a.smax},
         {"witnesses", witnesses}, {"not_found", missing}, {"max_s_used", s_used}};
  return {kOk, j.dump() + "\n", {}};
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string identity;
  std::optional<i64> qmax;
  bool all = false;
  std::string cache;
};

CommandResult cmd_verify(const VerifyArgs& a) {
  if (a.all == !a.identity.empty()) throw UsageError("give exactly one of --identity and --all");
  if (a.all && a.qmax) throw UsageError("--qmax applies to a single --identity only");
  CommandResult res;
  std::vector<VerificationReport> reports;
  if (a.all) {
    const ClassTable table = obtain_table(required_table_all(), a.cache, res.err);
    reports = run_all(table);
  } else {
    const auto id = parse_identity(a.identity);
    if (!id) throw UsageError("unknown identity: " + a.identity);
    const IdentityParams params{a.qmax};
    const ClassTable table = obtain_table(required_table(*id, params), a.cache, res.err);
    reports.push_back(run_identity(*id, params, table));
  }
  for (const auto& r : reports) {
    res.out += to_json(r) + "\n";
    if (!r.pass) res.exit_code = kFailure;
  }
  return res;
}

CommandResult failure(int code, const std::string& what) { return {code, {}, "fourpoly: " + what + "\n"}; }

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Hurwitz class numbers, polygonal and four-square representation counts, identity checks",
               "fourpoly"};
  app.require_subcommand(1);

  HurwitzArgs hw;
  auto* hurwitz = app.add_subcommand("hurwitz", "Emit the scaled class-number table 12H, 12H2 or 12H3");
  hurwitz->add_option("--max", hw.max, "Largest D")->required();
  hurwitz->add_option("--kind", hw.kind)->check(CLI::IsMember({"h", "h2", "h3"}));
  hurwitz->add_option("--format", hw.format)->check(CLI::IsMember({"csv", "json"}));
  hurwitz->add_option("--cache", hw.cache, "Class-table cache file");

  auto* rep = app.add_subcommand("rep", "Representation counts");
  rep->require_subcommand(1);
  PolygonalArgs pg;
  auto* polygonal = rep->add_subcommand("polygonal", "sum_i c_i p_M(l_i) = N");
  polygonal->add_option("--order", pg.order, "Polygon order M >= 3")->required();
  polygonal->add_option("--count", pg.count, "Number of summands (default 4)");
  polygonal->add_option("--n", pg.n, "Target N")->required();
  polygonal->add_option("--coeffs", pg.coeffs, "Comma-separated coefficients, e.g. 1,1,3,3");
  polygonal->add_option("--method", pg.method)->check(CLI::IsMember({"formula", "enum", "both"}));
  polygonal->add_option("--cache", pg.cache, "Class-table cache file");
  FoursquareArgs fsq;
  auto* foursquare = rep->add_subcommand("foursquare", "rho(n, r, m)");
  foursquare->add_option("--n", fsq.n)->required();
  foursquare->add_option("--r", fsq.r)->required();
  foursquare->add_option("--m", fsq.m)->required();
  foursquare->add_option("--method", fsq.method)->check(CLI::IsMember({"formula", "enum", "both"}));
  foursquare->add_option("--cache", fsq.cache, "Class-table cache file");

  i64 orbit_m = 0;
  auto* orbits = app.add_subcommand("orbits", "Signed-permutation orbits on vectors of norm m");
  orbits->add_option("--m", orbit_m)->required();

  SunArgs sn;
  auto* sun = app.add_subcommand("sun", "Search n = |u|^2 with <v, u> = 4^s");
  sun->add_option("--vector", sn.vector, "a,b,c,d")->required();
  sun->add_option("--nmax", sn.nmax)->required();
  sun->add_option("--smax", sn.smax)->required();

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Check identities coefficient by coefficient");
  verify->add_option("--identity", vf.identity);
  verify->add_option("--qmax", vf.qmax);
  verify->add_flag("--all", vf.all);
  verify->add_option("--cache", vf.cache, "Class-table cache file");

  std::vector<std::string> storage{"fourpoly"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), {}};
  } catch (const CLI::CallForAllHelp&) {
    return {kOk, app.help("", CLI::AppFormatMode::All), {}};
  } catch (const CLI::ParseError& e) {
    // Subcommand help (-h after a subcommand) also arrives here.
    if (e.get_exit_code() == 0) return {kOk, app.help(), {}};
    return failure(kUsage, e.what());
  }

  try {
    if (*hurwitz) return cmd_hurwitz(hw);
    if (*polygonal) return cmd_polygonal(pg);
    if (*foursquare) return cmd_foursquare(fsq);
    if (*orbits) return cmd_orbits(orbit_m);
    if (*sun) return cmd_sun(sn);
    if (*verify) return cmd_verify(vf);
    return failure(kUsage, "no subcommand");
  } catch (const UsageError& e) {
    return failure(kUsage, e.what());
  } catch (const DomainError& e) {
    return failure(kUsage, e.what());
  } catch (const CoverageError& e) {
    return failure(kCoverage, e.what());
  } catch (const ResourceError& e) {
    return failure(kCoverage, e.what());
  } catch (const std::exception& e) {
    return failure(kCoverage, e.what());
  }
}

}  // namespace fourpoly::cli
