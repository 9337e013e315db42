// aglmu: subgroups and the Möbius function of AGL(1, F_q).
//
// Exit codes: 0 success, 1 usage or validation error, 2 domain error,
// 3 I/O error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aglmu/aglmu.hpp"

namespace {

using namespace aglmu;

enum class Format { Table, Json, Csv };

struct RunConfig {
  std::string q_text;
  u64 p = 0;
  u64 n = 0;
  Format format = Format::Table;
  bool json = false;
  bool csv = false;
  std::string cache_dir;
  std::size_t oracle_cap = kDefaultOracleCap;
  u64 size_cap = kDefaultSizeCap;
  unsigned jobs = 1;
  bool verbose = false;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime:
    case ErrorKind::NotPrimePower:
    case ErrorKind::SizeCap:
    case ErrorKind::ParseError:
    case ErrorKind::KOutOfRange:
    case ErrorKind::InvalidOrder:
    case ErrorKind::NotDivisor:
    case ErrorKind::CrosscutTooLarge:
      return 1;
    case ErrorKind::CacheError:
      return 3;
    default:
      return 2;
  }
}

std::pair<u64, u64> parse_q(const std::string& text) {
  u64 q = 0;
  try {
    std::size_t pos = 0;
    q = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "q must be a positive integer, got '" + text + "'");
  }
  const auto pp = nt::prime_power(q);
  if (!pp) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  return {pp->first, pp->second};
}

std::shared_ptr<const GaloisField> make_field(const RunConfig& cfg) {
  u64 p = cfg.p;
  u64 n = cfg.n;
  if (!cfg.q_text.empty()) {
    std::tie(p, n) = parse_q(cfg.q_text);
  } else if (p == 0) {
    throw Error(ErrorKind::ParseError, "give --q, or --p with --n");
  } else if (n == 0) {
    n = 1;
  }
  return std::make_shared<const GaloisField>(build_field(p, n, cfg.size_cap));
}

std::filesystem::path cache_dir(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("AGLMU_CACHE_DIR"); env && *env) return env;
  return {};
}

void log(const RunConfig& cfg, const std::string& msg) {
  if (cfg.verbose) std::cerr << "[aglmu] " << msg << '\n';
}

/// Catalog and closed-form table, through the cache when one is configured.
std::pair<GroupCatalog, AglMuTable> catalog_and_table(const RunConfig& cfg, std::shared_ptr<const GaloisField> field) {
  const auto dir = cache_dir(cfg);
  if (!dir.empty()) {
    if (auto hit = load_cache(dir, field)) {
      log(cfg, "loaded " + cache_file(dir, field->q()).string());
      return std::move(*hit);
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto catalog = enumerate_all(field, cfg.size_cap);
  auto table = mu_table_closed(catalog, cfg.jobs);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  log(cfg, std::to_string(catalog.size()) + " subgroups, " + std::to_string(table.mu.size()) + " pairs in " +
               std::to_string(dt.count()) + "s");
  if (!dir.empty()) {
    save_cache(dir, catalog, table);
    log(cfg, "wrote " + cache_file(dir, field->q()).string());
  }
  return {std::move(catalog), std::move(table)};
}

Format format_of(const RunConfig& cfg) {
  if (cfg.json) return Format::Json;
  if (cfg.csv) return Format::Csv;
  return Format::Table;
}

void write(const std::string& s) {
  std::cout << s;
  std::cout.flush();
  if (!std::cout) throw IoError("failed writing to stdout");
}

int cmd_mu(const RunConfig& cfg, const std::string& s1_text, const std::string& s2_text, bool explain) {
  const auto field = make_field(cfg);
  std::optional<GroupCatalog> catalog;
  if (s1_text.starts_with("#") || s2_text.starts_with("#")) catalog = enumerate_all(field, cfg.size_cap);
  const auto s1 = parse_subgroup(*field, s1_text, catalog ? &*catalog : nullptr);
  const auto s2 = parse_subgroup(*field, s2_text, catalog ? &*catalog : nullptr);
  const auto ex = explain_mu(*field, s1, s2);
  if (format_of(cfg) == Format::Json) {
    Json j{{"q", field->q()}, {"s1", to_json(*field, s1)}, {"s2", to_json(*field, s2)}, {"mu", integer_to_json(ex.value)}};
    if (explain)
      j["explain"] = Json{{"branch", std::string(to_string(ex.branch))},
                          {"d1", ex.d1},
                          {"d2", ex.d2},
                          {"r", ex.r},
                          {"classic_mu", ex.classic},
                          {"index", ex.index},
                          {"l", ex.l},
                          {"subspace_mu", integer_to_json(ex.subspace_mu)}};
    write(j.dump(2) + "\n");
    return 0;
  }
  std::string out = ex.value.str() + "\n";
  if (explain) {
    const std::string r = std::to_string(ex.r);
    switch (ex.branch) {
      case MuBranch::Equal:
        out += "branch: S1 = S2, mu = 1\n";
        break;
      case MuBranch::Vanishing:
        out += "branch: vanishing, H1 is not an F_" + r + "-module (r = p(d2), d2 = " + std::to_string(ex.d2) + ")\n";
        break;
      case MuBranch::LinearBottom:
        out += "branch: d1!=1, mu(" + std::to_string(ex.d2 / ex.d1) + ")=" + std::to_string(ex.classic) + ", mu_" + r +
               "(dim " + std::to_string(ex.l) + ")=" + ex.subspace_mu.str() + "\n";
        break;
      case MuBranch::TranslationBottom:
        out += "branch: d1=1, |H2/H1|=" + std::to_string(ex.index) + ", mu(" + std::to_string(ex.d2) +
               ")=" + std::to_string(ex.classic) + ", mu_" + r + "(dim " + std::to_string(ex.l) + ")=" +
               ex.subspace_mu.str() + "\n";
        break;
      case MuBranch::TranslationOnly:
        out += "branch: d1=d2=1, mu_" + r + "(dim " + std::to_string(ex.l) + ")=" + ex.subspace_mu.str() + "\n";
        break;
    }
  }
  write(out);
  return 0;
}

int cmd_table(const RunConfig& cfg) {
  const auto field = make_field(cfg);
  const auto [catalog, table] = catalog_and_table(cfg, field);
  switch (format_of(cfg)) {
    case Format::Json: write(table_to_json(catalog, table).dump() + "\n"); break;
    case Format::Csv: write(table_to_csv(catalog, table)); break;
    case Format::Table: write(table_to_text(catalog, table)); break;
  }
  return 0;
}

int cmd_subgroups(const RunConfig& cfg) {
  const auto field = make_field(cfg);
  const auto catalog = enumerate_all(field, cfg.size_cap);
  switch (format_of(cfg)) {
    case Format::Json: write(catalog_to_json(catalog).dump() + "\n"); break;
    case Format::Csv: write(catalog_to_csv(catalog)); break;
    case Format::Table: write(catalog_to_text(catalog)); break;
  }
  return 0;
}

int cmd_designs(const RunConfig& cfg, long long k_min, std::optional<long long> k_max) {
  const auto field = make_field(cfg);
  const auto [catalog, table] = catalog_and_table(cfg, field);
  const auto report = design_scan(catalog, table, k_min, k_max.value_or(static_cast<long long>(field->q())));
  switch (format_of(cfg)) {
    case Format::Json: write(designs_to_json(report).dump() + "\n"); break;
    case Format::Csv: write(designs_to_csv(report)); break;
    case Format::Table: write(designs_to_text(report)); break;
  }
  return 0;
}

int cmd_eulerian(const RunConfig& cfg, u64 m) {
  const auto field = make_field(cfg);
  const auto [catalog, table] = catalog_and_table(cfg, field);
  const auto phi = eulerian_phi(catalog, table, m);
  if (format_of(cfg) == Format::Json)
    write(Json{{"q", field->q()}, {"m", m}, {"phi", integer_to_json(phi)}}.dump() + "\n");
  else
    write(phi.str() + "\n");
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& qs, const std::string& level_text) {
  if (level_text != "fast" && level_text != "full") throw Error(ErrorKind::ParseError, "level must be fast or full");
  const auto level = level_text == "fast" ? VerifyLevel::Fast : VerifyLevel::Full;
  // Validate every q up front so a typo fails before any long run.
  std::vector<std::pair<u64, u64>> fields;
  for (const auto& q : qs) fields.push_back(parse_q(q));

  bool all_ok = true;
  Json report = Json::array();
  for (auto [p, n] : fields) {
    const auto field = std::make_shared<const GaloisField>(build_field(p, n, cfg.size_cap));
    const auto q = field->q();
    std::vector<CheckResult> results;
    try {
      const auto catalog = enumerate_all(field, cfg.size_cap);
      results.push_back(check_oracle_equivalence(catalog, level, cfg.oracle_cap));
      if (level == VerifyLevel::Full) {
        const auto table = mu_table_closed(catalog, cfg.jobs);
        results.push_back(check_immediate_supergroups(catalog));
        results.push_back(check_crosscuts(catalog));
        results.push_back(check_subfield_descent(*field));
        results.push_back(check_pgroup(*field));
        results.push_back(check_design_identities(catalog, table));
        results.push_back(check_inversion_roundtrip(catalog, 10, q));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeCap) throw;
      std::cerr << "q=" << q << ": skipped (" << e.what() << ")\n";
      continue;
    }
    for (const auto& r : results) {
      all_ok = all_ok && r.ok();
      if (format_of(cfg) == Format::Json) {
        report.push_back(Json{{"q", q}, {"check", r.name}, {"passed", r.passed}, {"failed", r.failed},
                              {"skipped", r.skipped}, {"first_failure", r.first_failure}});
      } else {
        std::string line = "q=" + std::to_string(q) + " " + (r.ok() ? "PASS " : "FAIL ") + r.name + ": " +
                           std::to_string(r.passed) + " passed, " + std::to_string(r.failed) + " failed";
        if (r.skipped) line += ", " + std::to_string(r.skipped) + " skipped";
        if (!r.ok()) line += " (first: " + r.first_failure + ")";
        write(line + "\n");
      }
    }
  }
  if (format_of(cfg) == Format::Json) write(report.dump(2) + "\n");
  return all_ok ? 0 : 2;
}

void add_field_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q_text, "Field order, a prime power");
  sub->add_option("--p", cfg.p, "Characteristic (alternative to --q)");
  sub->add_option("--n", cfg.n, "Extension degree, used with --p");
  sub->add_option("--size-cap", cfg.size_cap, "Largest q accepted")->capture_default_str();
}

void add_format_options(CLI::App* sub, RunConfig& cfg) {
  auto* json = sub->add_flag("--json", cfg.json, "JSON output");
  sub->add_flag("--csv", cfg.csv, "CSV output")->excludes(json);
}

void add_cache_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--cache", cfg.cache_dir, "Cache directory (default: $AGLMU_CACHE_DIR)");
  sub->add_option("--jobs,-j", cfg.jobs, "Threads for table construction")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgroups and the Möbius function of the affine group AGL(1, F_q)"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_flag("-v,--verbose", cfg.verbose, "Progress and timing on stderr");

  std::string s1_text, s2_text;
  bool explain = false;
  auto* mu = app.add_subcommand("mu", "mu(S1, S2) for two subgroups");
  add_field_options(mu, cfg);
  add_format_options(mu, cfg);
  mu->add_option("s1", s1_text, "Lower subgroup: trivial | full | #<index> | d=<d>;b=<elem>;H=<basis>")->required();
  mu->add_option("s2", s2_text, "Upper subgroup, same syntax")->required();
  mu->add_flag("--explain", explain, "Show the branch and factors of the closed formula");

  auto* table = app.add_subcommand("table", "mu on every comparable pair of subgroups");
  add_field_options(table, cfg);
  add_format_options(table, cfg);
  add_cache_options(table, cfg);

  auto* subgroups = app.add_subcommand("subgroups", "List every subgroup in canonical order");
  add_field_options(subgroups, cfg);
  add_format_options(subgroups, cfg);

  std::vector<std::string> verify_qs;
  std::string level = "full";
  auto* verify = app.add_subcommand("verify", "Check the closed formula against independent oracles");
  verify->add_option("--q", verify_qs, "Field orders to check (comma separated or repeated)")->required()->delimiter(',');
  verify->add_option("--level", level, "fast | full")->capture_default_str();
  verify->add_option("--oracle-cap", cfg.oracle_cap, "Largest subgroup count for the recursion")->capture_default_str();
  verify->add_option("--size-cap", cfg.size_cap, "Largest q accepted")->capture_default_str();
  verify->add_option("--jobs,-j", cfg.jobs, "Threads for table construction")->check(CLI::PositiveNumber);
  add_format_options(verify, cfg);

  long long k_min = 0;
  std::optional<long long> k_max;
  auto* designs = app.add_subcommand("designs", "Stabilizer counts and 2-design parameters of k-subsets");
  add_field_options(designs, cfg);
  add_format_options(designs, cfg);
  add_cache_options(designs, cfg);
  designs->add_option("--k-min", k_min, "Smallest block size")->capture_default_str();
  designs->add_option("--k-max", k_max, "Largest block size (default q)");

  u64 m = 1;
  auto* eulerian = app.add_subcommand("eulerian", "Number of ordered m-tuples generating the group");
  add_field_options(eulerian, cfg);
  add_format_options(eulerian, cfg);
  add_cache_options(eulerian, cfg);
  eulerian->add_option("--m", m, "Tuple length")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*mu) return cmd_mu(cfg, s1_text, s2_text, explain);
    if (*table) return cmd_table(cfg);
    if (*subgroups) return cmd_subgroups(cfg);
    if (*verify) return cmd_verify(cfg, verify_qs, level);
    if (*designs) return cmd_designs(cfg, k_min, k_max);
    if (*eulerian) return cmd_eulerian(cfg, m);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
