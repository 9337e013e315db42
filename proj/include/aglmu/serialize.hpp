#pragma once

// JSON and CSV encodings, the subgroup descriptor syntax used on the command
// line, and the versioned on-disk cache.
//
// Integers are written as JSON numbers when they fit in int64 and as decimal
// strings otherwise.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aglmu/designs.hpp"
#include "aglmu/error.hpp"
#include "aglmu/gf.hpp"
#include "aglmu/integer.hpp"
#include "aglmu/mobius.hpp"
#include "aglmu/subgroups.hpp"
#include "aglmu/submodules.hpp"

namespace aglmu {

using Json = nlohmann::ordered_json;

inline constexpr int kCacheSchemaVersion = 1;

inline Json integer_to_json(const Integer& v) {
  if (fits_int64(v)) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

inline Json to_json(const Submodule& h) {
  Json basis = Json::array();
  for (const auto& row : h.basis()) basis.push_back(row.coeffs());
  return Json{{"dim_p", h.dim_p()}, {"basis", std::move(basis)}};
}

inline Submodule submodule_from_json(const GaloisField& field, const Json& j) {
  std::vector<FieldElement> rows;
  for (const auto& r : j.at("basis")) {
    std::vector<u64> coeffs = r.get<std::vector<u64>>();
    for (u64 c : coeffs)
      if (c >= field.p()) throw Error(ErrorKind::ParseError, "basis coefficient out of range");
    rows.push_back(field.element(std::move(coeffs)));
  }
  auto h = Submodule::span(field, rows);
  if (h.dim_p() != j.at("dim_p").get<std::size_t>()) throw Error(ErrorKind::ParseError, "dim_p does not match basis");
  return h;
}

inline Json to_json(const GaloisField& field, const Subgroup& s) {
  return Json{{"d", s.d}, {"b", format_element(field, s.b)}, {"H", to_json(s.h)}, {"order", s.order()}};
}

inline Subgroup subgroup_from_json(const GaloisField& field, const Json& j) {
  return make_subgroup(field, j.at("d").get<u64>(), parse_element(field, j.at("b").get<std::string>()),
                       submodule_from_json(field, j.at("H")));
}

inline Json catalog_to_json(const GroupCatalog& catalog) {
  Json arr = Json::array();
  for (const auto& s : catalog.all()) arr.push_back(to_json(catalog.field(), s));
  return arr;
}

inline Json mu_entries_to_json(const AglMuTable& table) {
  Json arr = Json::array();
  for (const auto& [key, v] : table.mu) arr.push_back(Json::array({key.first, key.second, integer_to_json(v)}));
  return arr;
}

/// {"q": q, "subgroups": [...], "mu": [[i, j, value], ...]}
inline Json table_to_json(const GroupCatalog& catalog, const AglMuTable& table) {
  return Json{{"q", table.q}, {"subgroups", catalog_to_json(catalog)}, {"mu", mu_entries_to_json(table)}};
}

inline std::string table_to_csv(const GroupCatalog& catalog, const AglMuTable& table) {
  std::ostringstream out;
  out << "i,j,d1,d2,dimH1,dimH2,mu\n";
  for (const auto& [key, v] : table.mu) {
    const auto& a = catalog[key.first];
    const auto& b = catalog[key.second];
    out << key.first << ',' << key.second << ',' << a.d << ',' << b.d << ',' << a.h.dim_p() << ',' << b.h.dim_p()
        << ',' << v << '\n';
  }
  return out.str();
}

inline std::string table_to_text(const GroupCatalog& catalog, const AglMuTable& table) {
  std::ostringstream out;
  out << "# q = " << table.q << ", " << catalog.size() << " subgroups, " << table.mu.size() << " comparable pairs\n";
  out << "# i j mu\n";
  for (const auto& [key, v] : table.mu) out << key.first << ' ' << key.second << ' ' << v << '\n';
  return out.str();
}

inline std::string basis_text(const Submodule& h) {
  std::string s;
  for (const auto& row : h.basis()) {
    if (!s.empty()) s += ' ';
    s += format_coeffs(row);
  }
  return s;
}

inline std::string catalog_to_csv(const GroupCatalog& catalog) {
  std::ostringstream out;
  out << "index,d,b,dim_p,order,basis\n";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& s = catalog[i];
    out << i << ',' << s.d << ',' << format_element(catalog.field(), s.b) << ',' << s.h.dim_p() << ',' << s.order()
        << ",\"" << basis_text(s.h) << "\"\n";
  }
  return out.str();
}

inline std::string catalog_to_text(const GroupCatalog& catalog) {
  std::ostringstream out;
  out << "# q = " << catalog.field().q() << ", " << catalog.size() << " subgroups\n";
  out << "# index d b dim_p order basis\n";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& s = catalog[i];
    out << i << ' ' << s.d << ' ' << format_element(catalog.field(), s.b) << ' ' << s.h.dim_p() << ' ' << s.order()
        << ' ' << (s.h.dim_p() == 0 ? std::string("{0}") : basis_text(s.h)) << '\n';
  }
  return out.str();
}

inline std::string designs_to_csv(const DesignReport& report) {
  std::ostringstream out;
  out << "subgroup_index,order,k,f_k,g_k,lambda_num,lambda_den,integral\n";
  for (const auto& r : report.rows)
    out << r.subgroup_index << ',' << r.order << ',' << r.k << ',' << r.f_k << ',' << r.g_k << ',' << r.lambda.num
        << ',' << r.lambda.den << ',' << (r.lambda.integral ? "true" : "false") << '\n';
  return out.str();
}

inline Json designs_to_json(const DesignReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows)
    rows.push_back(Json{{"subgroup_index", r.subgroup_index},
                        {"order", r.order},
                        {"k", r.k},
                        {"f_k", integer_to_json(r.f_k)},
                        {"g_k", integer_to_json(r.g_k)},
                        {"lambda_num", integer_to_json(r.lambda.num)},
                        {"lambda_den", integer_to_json(r.lambda.den)},
                        {"integral", r.lambda.integral},
                        {"realizable", r.realizable()}});
  return Json{{"q", report.q}, {"t", DesignReport::t}, {"v", report.q}, {"rows", std::move(rows)}};
}

inline std::string designs_to_text(const DesignReport& report) {
  std::ostringstream out;
  out << "# 2-(" << report.q << ", k, lambda) designs; rows with g_k > 0 are realizable base blocks\n";
  out << "# index order k f_k g_k lambda integral\n";
  for (const auto& r : report.rows) {
    out << r.subgroup_index << ' ' << r.order << ' ' << r.k << ' ' << r.f_k << ' ' << r.g_k << ' ' << r.lambda.num;
    if (r.lambda.den != 1) out << '/' << r.lambda.den;
    out << ' ' << (r.lambda.integral ? "yes" : "no") << (r.realizable() ? " *" : "") << '\n';
  }
  return out.str();
}

namespace detail {

/// Splits on commas that are not nested inside brackets.
inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

}  // namespace detail

/// Parses "d=<d>;b=<element>;H=<basis>", "trivial", "full" or "#<index>"
/// (the last needs a catalog).
///
/// <basis> is "0", "full", or a bracketed list of spanning elements, each in
/// "g^k" or coefficient form: "[g^0,g^5]", "[[1,0],[0,1]]". b defaults to 0.
inline Subgroup parse_subgroup(const GaloisField& field, std::string_view text, const GroupCatalog* catalog = nullptr) {
  const auto s = detail::strip(text);
  if (s == "trivial") return trivial_subgroup(field);
  if (s == "full") return full_group(field);
  if (s.starts_with("#")) {
    if (!catalog) throw Error(ErrorKind::ParseError, "index descriptors need a subgroup catalog");
    const u64 idx = detail::parse_u64(s.substr(1), "subgroup index");
    if (idx >= catalog->size()) throw Error(ErrorKind::ParseError, "subgroup index " + std::to_string(idx) + " out of range");
    return (*catalog)[idx];
  }
  std::optional<u64> d;
  FieldElement b = field.zero();
  Submodule h = Submodule::zero(field);
  for (auto part : detail::split_top_level(s, ';')) {
    part = detail::strip(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected key=value in '" + std::string(part) + "'");
    const auto key = detail::strip(part.substr(0, eq));
    const auto value = detail::strip(part.substr(eq + 1));
    if (key == "d") {
      d = detail::parse_u64(value, "d");
    } else if (key == "b") {
      b = parse_element(field, value);
    } else if (key == "H") {
      if (value == "0" || value == "[]") {
        h = Submodule::zero(field);
      } else if (value == "full") {
        h = Submodule::whole(field);
      } else if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
        std::vector<FieldElement> gens;
        for (auto e : detail::split_top_level(value.substr(1, value.size() - 2), ','))
          gens.push_back(parse_element(field, e));
        h = Submodule::span(field, gens);
      } else {
        throw Error(ErrorKind::ParseError, "bad basis '" + std::string(value) + "'");
      }
    } else {
      throw Error(ErrorKind::ParseError, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!d) throw Error(ErrorKind::ParseError, "descriptor needs d=<divisor of q-1>");
  try {
    return make_subgroup(field, *d, b, std::move(h));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// ---------------------------------------------------------------- cache

inline Json field_fingerprint(const GaloisField& field) {
  return Json{{"p", field.p()}, {"n", field.n()}, {"modulus", field.spec().modulus}, {"gamma", field.gamma().coeffs()}};
}

inline Json make_cache_envelope(const GroupCatalog& catalog, const AglMuTable& table) {
  return Json{{"schema_version", kCacheSchemaVersion},
              {"fingerprint", field_fingerprint(catalog.field())},
              {"kind", "mu_table"},
              {"payload", Json{{"subgroups", catalog_to_json(catalog)}, {"mu", mu_entries_to_json(table)}}}};
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, u64 q) {
  return dir / ("aglmu_q" + std::to_string(q) + "_table.json");
}

inline void save_cache(const std::filesystem::path& dir, const GroupCatalog& catalog, const AglMuTable& table) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::CacheError, "cannot create " + dir.string() + ": " + ec.message());
  const auto path = cache_file(dir, table.q);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::CacheError, "cannot write " + tmp);
    out << make_cache_envelope(catalog, table).dump() << '\n';
    if (!out) throw Error(ErrorKind::CacheError, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::CacheError, "cannot rename into " + path.string() + ": " + ec.message());
}

/// Reads a cached catalog and table for this field. Returns nullopt when the
/// file is absent, stale (version or fingerprint mismatch) or unreadable; the
/// caller rebuilds in that case.
inline std::optional<std::pair<GroupCatalog, AglMuTable>> load_cache(const std::filesystem::path& dir,
                                                                    std::shared_ptr<const GaloisField> field) {
  const auto path = cache_file(dir, field->q());
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const Json env = Json::parse(in);
    if (env.at("schema_version").get<int>() != kCacheSchemaVersion) return std::nullopt;
    if (env.at("fingerprint") != field_fingerprint(*field)) return std::nullopt;
    const auto& payload = env.at("payload");
    std::vector<Subgroup> all;
    for (const auto& j : payload.at("subgroups")) all.push_back(subgroup_from_json(*field, j));
    const auto count = all.size();
    if (!std::is_sorted(all.begin(), all.end()) || std::adjacent_find(all.begin(), all.end()) != all.end())
      return std::nullopt;
    GroupCatalog catalog(field, std::move(all));
    AglMuTable table;
    table.q = field->q();
    for (const auto& e : payload.at("mu")) {
      const auto i = e.at(0).get<std::size_t>();
      const auto j = e.at(1).get<std::size_t>();
      if (i >= count || j >= count) return std::nullopt;
      table.mu.emplace(std::pair{i, j}, integer_from_json(e.at(2)));
    }
    return std::pair{std::move(catalog), std::move(table)};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace aglmu
