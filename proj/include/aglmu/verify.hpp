#pragma once

// Cross-checks of the closed-form Möbius function against the independent
// routes: the defining recursion, both crosscut sums, the subfield-descent
// identity for subspace lattices, the p-group formula on the translation
// subgroup, Möbius inversion, and the design counting identities.

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "aglmu/designs.hpp"
#include "aglmu/lattice.hpp"
#include "aglmu/mobius.hpp"
#include "aglmu/subgroups.hpp"
#include "aglmu/submodules.hpp"

namespace aglmu {

struct CheckResult {
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::string first_failure;

  bool ok() const { return failed == 0; }

  void record(bool good, const std::function<std::string()>& describe) {
    if (good) {
      ++passed;
    } else {
      if (failed == 0) first_failure = describe();
      ++failed;
    }
  }
};

enum class VerifyLevel { Fast, Full };

/// Closed vs recursive table. Fast level compares mu(trivial, K) only.
inline CheckResult check_oracle_equivalence(const GroupCatalog& catalog, VerifyLevel level,
                                            std::size_t oracle_cap = kDefaultOracleCap) {
  CheckResult res("closed formula = recursion");
  const auto oracle = mu_table_oracle(catalog, oracle_cap);
  if (level == VerifyLevel::Fast) {
    const auto& field = catalog.field();
    for (std::size_t j = 0; j < catalog.size(); ++j) {
      const auto expect = oracle.at(0, j);
      if (!expect) continue;
      const auto got = mu_closed(field, catalog[0], catalog[j]);
      res.record(got == *expect, [&] { return "mu(0," + std::to_string(j) + "): closed " + got.str() + " vs " + expect->str(); });
    }
    return res;
  }
  const auto closed = mu_table_closed(catalog);
  res.record(closed.mu.size() == oracle.mu.size(), [] { return std::string("comparable pair sets differ"); });
  for (const auto& [key, v] : oracle.mu) {
    const auto got = closed.at(key.first, key.second);
    res.record(got && *got == v, [&, key = key, v = v] {
      return "mu(" + std::to_string(key.first) + "," + std::to_string(key.second) + "): closed " +
             (got ? got->str() : std::string("missing")) + " vs " + v.str();
    });
  }
  return res;
}

/// Both crosscut sums on every interval [x, y], x < y, whose crosscut fits the cap.
inline CheckResult check_crosscuts(const GroupCatalog& catalog) {
  CheckResult res("crosscut sums = recursion");
  const auto poset = subgroup_poset(catalog);
  const auto table = mu_recursive(poset);
  for (std::size_t x = 0; x < poset.size(); ++x)
    for (std::size_t y = 0; y < poset.size(); ++y) {
      if (!poset.less(x, y)) continue;
      const auto sub = poset.interval(x, y);
      const auto lower = sub.atoms();
      const auto upper = sub.coatoms();
      if (lower.size() > kMaxCrosscutSize || upper.size() > kMaxCrosscutSize) {
        ++res.skipped;
        continue;
      }
      const auto lo = mu_crosscut_lower(sub, lower);
      const auto up = mu_crosscut_upper(sub, upper);
      const auto& expect = table(x, y);
      res.record(lo == expect && up == expect, [&] {
        return "[" + std::to_string(x) + "," + std::to_string(y) + "]: lower " + lo.str() + ", upper " + up.str() +
               ", recursion " + expect.str();
      });
    }
  return res;
}

/// Every subfield chain F_r ⊆ F_q' ⊆ F_q and every F_q'-submodule V.
inline CheckResult check_subfield_descent(const GaloisField& field) {
  CheckResult res("subfield descent identity");
  for (u32 mq = 1; mq <= field.n(); ++mq) {
    if (field.n() % mq != 0) continue;
    const SubfieldTag qprime{*nt::checked_pow(field.p(), mq), mq};
    const auto vs = enumerate_submodules(field, qprime);
    for (u32 mr = 1; mr <= mq; ++mr) {
      if (mq % mr != 0) continue;
      const SubfieldTag r{*nt::checked_pow(field.p(), mr), mr};
      for (const auto& v : vs)
        res.record(subfield_descent_holds(field, r, qprime, v), [&] {
          return "r=" + std::to_string(r.r) + ", q'=" + std::to_string(qprime.r) + ", dim_p V=" + std::to_string(v.dim_p());
        });
    }
  }
  return res;
}

/// The translation subgroup B ≅ (Z_p)^n: its subgroups are the F_p-subspaces.
struct TranslationLattice {
  std::vector<Submodule> subspaces;
  Poset poset;
  std::vector<std::size_t> log_order;
};

inline TranslationLattice translation_lattice(const GaloisField& field) {
  TranslationLattice t;
  t.subspaces = enumerate_submodules(field, SubfieldTag{field.p(), 1});
  t.poset = Poset::from_relation(t.subspaces.size(),
                                 [&](std::size_t i, std::size_t j) { return t.subspaces[i].is_subset_of(t.subspaces[j]); });
  for (const auto& s : t.subspaces) t.log_order.push_back(s.dim_p());
  return t;
}

inline CheckResult check_pgroup(const GaloisField& field) {
  CheckResult res("p-group formula on translations");
  const auto t = translation_lattice(field);
  res.record(pgroup_mu_check(t.poset, t.log_order, field.p()), [] { return std::string("recursion disagrees"); });
  return res;
}

/// f_k(H) = sum_{K ⊇ H} g_k(K), sum_H g_k(H) = C(q, k), g_k >= 0.
inline CheckResult check_design_identities(const GroupCatalog& catalog, const AglMuTable& table) {
  CheckResult res("design inversion identities");
  const auto q = static_cast<long long>(catalog.field().q());
  const auto report = design_scan(catalog, table, 0, q);
  const auto width = static_cast<std::size_t>(q + 1);
  auto row = [&](std::size_t h, long long k) -> const DesignRow& { return report.rows[h * width + static_cast<std::size_t>(k)]; };
  for (long long k = 0; k <= q; ++k) {
    Integer total = 0;
    for (std::size_t h = 0; h < catalog.size(); ++h) {
      total += row(h, k).g_k;
      res.record(row(h, k).g_k >= 0, [&] { return "g_" + std::to_string(k) + " negative at " + std::to_string(h); });
      Integer up = 0;
      for (std::size_t j = 0; j < catalog.size(); ++j)
        if (catalog.contains(j, h)) up += row(j, k).g_k;
      res.record(up == row(h, k).f_k, [&] { return "inversion fails at H=" + std::to_string(h) + ", k=" + std::to_string(k); });
    }
    Integer binom = 1;
    for (long long i = 0; i < k; ++i) binom = binom * (q - i) / (i + 1);
    res.record(total == binom, [&] { return "sum of g_" + std::to_string(k) + " is " + total.str(); });
  }
  return res;
}

/// Random integer functions on the subgroup lattice: summation then inversion.
inline CheckResult check_inversion_roundtrip(const GroupCatalog& catalog, std::size_t trials, std::uint64_t seed) {
  CheckResult res("Moebius inversion round trip");
  const auto poset = subgroup_poset(catalog);
  const auto table = mu_recursive(poset);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Integer> f(poset.size());
    for (auto& v : f) v = dist(rng);
    const auto back = moebius_invert(table, summate(poset, f));
    res.record(back == f, [&] { return "trial " + std::to_string(t); });
  }
  return res;
}

/// Classification-derived immediate supergroups vs minimal strict supergroups.
inline CheckResult check_immediate_supergroups(const GroupCatalog& catalog) {
  CheckResult res("immediate supergroups");
  const auto n = catalog.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<Subgroup> minimal;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !catalog.contains(j, i)) continue;
      bool is_min = true;
      for (std::size_t k = 0; k < n && is_min; ++k)
        if (k != i && k != j && catalog.contains(k, i) && catalog.contains(j, k)) is_min = false;
      if (is_min) minimal.push_back(catalog[j]);
    }
    std::sort(minimal.begin(), minimal.end());
    res.record(immediate_supergroups(catalog.field(), catalog[i]) == minimal,
               [&] { return "subgroup " + std::to_string(i); });
  }
  return res;
}

}  // namespace aglmu
