#pragma once

// Möbius function of the subgroup lattice of AGL(1, F_q) in closed form.
//
// For S_i = S(gamma^((q-1)/d_i), 0, H_i) with d_1 | d_2 and H_1 ⊆ H_2, and
// r = p(d_2):
//
//   mu(S_1, S_2) = 0                                   if H_1 is not an F_r-module
//                = mu(d_2/d_1) mu_r(H_2/H_1)           if d_1 != 1
//                = |H_2/H_1| mu(d_2) mu_r(H_2/H_1)     if d_1 = 1, d_2 != 1
//
// with mu_r(W, V) = (-1)^l r^(l choose 2), l = dim_{F_r}(V/W). When
// d_1 = d_2 = 1 both subgroups are translation groups, an elementary abelian
// p-group, and mu is mu_p(H_2/H_1).

#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "aglmu/error.hpp"
#include "aglmu/integer.hpp"
#include "aglmu/lattice.hpp"
#include "aglmu/numtheory.hpp"
#include "aglmu/subgroups.hpp"
#include "aglmu/submodules.hpp"

namespace aglmu {

/// The number-theoretic Möbius function.
inline int classic_mu(u64 n) {
  if (n == 0) throw Error(ErrorKind::NotDivisor, "classic_mu(0)");
  int sign = 1;
  for (auto [prime, e] : nt::factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

/// Conjugates the pair by translations so both have the form S(A_i, 0, H_i).
inline std::pair<Subgroup, Subgroup> normalize_pair(const GaloisField& field, const Subgroup& s1, const Subgroup& s2) {
  if (!contains(field, s2, s1)) throw Error(ErrorKind::NotContained, "S1 is not a subgroup of S2");
  auto [n1, t] = normalize_conjugate(field, s1);
  Subgroup n2 = t.b.is_zero() ? s2 : conjugate_by_translation(field, s2, t.b);
  // With d_1 = 1 the translation subgroup S1 is normal under translations, so
  // S2 can be moved independently.
  n2 = normalize_conjugate(field, n2).first;
  return {std::move(n1), std::move(n2)};
}

enum class MuBranch { Equal, Vanishing, TranslationOnly, LinearBottom, TranslationBottom };

inline std::string_view to_string(MuBranch b) {
  switch (b) {
    case MuBranch::Equal: return "equal";
    case MuBranch::Vanishing: return "vanishing";
    case MuBranch::TranslationOnly: return "d1=d2=1";
    case MuBranch::LinearBottom: return "d1!=1";
    case MuBranch::TranslationBottom: return "d1=1";
  }
  return "?";
}

/// The value together with the factors that produced it.
struct MuExplanation {
  Integer value;
  MuBranch branch = MuBranch::Equal;
  u64 d1 = 1;
  u64 d2 = 1;
  u64 r = 1;               ///< p(d2), or p when d2 = 1
  int classic = 1;         ///< mu(d2/d1) or mu(d2)
  std::size_t l = 0;       ///< dim over F_r of H2/H1
  Integer subspace_mu = 1; ///< mu_r(H2/H1)
  u64 index = 1;           ///< |H2/H1|
};

inline MuExplanation explain_mu(const GaloisField& field, const Subgroup& s1, const Subgroup& s2) {
  const auto [a, b] = normalize_pair(field, s1, s2);
  MuExplanation ex;
  ex.d1 = a.d;
  ex.d2 = b.d;
  ex.r = coefficient_field_order(field.p(), b.d);
  if (a == b) {
    ex.value = 1;
    return ex;
  }
  if (b.d % a.d != 0 || !a.h.is_subset_of(b.h))
    throw Error(ErrorKind::NotContained, "normalized pair is not nested");
  const auto tag = subfield_tag(field, ex.r);
  if (!is_module_over(field, a.h, tag)) {
    ex.branch = MuBranch::Vanishing;
    ex.value = 0;
    return ex;
  }
  ex.l = quotient_dim(field, a.h, b.h, tag);
  ex.subspace_mu = mu_subspace(ex.l, ex.r);
  ex.index = b.h.size() / a.h.size();
  if (a.d != 1) {
    ex.branch = MuBranch::LinearBottom;
    ex.classic = classic_mu(b.d / a.d);
    ex.value = ex.classic * ex.subspace_mu;
  } else if (b.d != 1) {
    ex.branch = MuBranch::TranslationBottom;
    ex.classic = classic_mu(b.d);
    ex.value = Integer(ex.index) * ex.classic * ex.subspace_mu;
  } else {
    ex.branch = MuBranch::TranslationOnly;
    ex.value = ex.subspace_mu;
  }
  return ex;
}

inline Integer mu_closed(const GaloisField& field, const Subgroup& s1, const Subgroup& s2) {
  return explain_mu(field, s1, s2).value;
}

/// mu on every comparable pair (i, j), i below j, keyed by catalog indices.
struct AglMuTable {
  u64 q = 0;
  std::map<std::pair<std::size_t, std::size_t>, Integer> mu;

  std::optional<Integer> at(std::size_t i, std::size_t j) const {
    auto it = mu.find({i, j});
    if (it == mu.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const AglMuTable&, const AglMuTable&) = default;
};

inline AglMuTable mu_table_closed(const GroupCatalog& catalog, unsigned jobs = 1) {
  const auto n = catalog.size();
  std::vector<std::vector<std::pair<std::size_t, Integer>>> rows(n);
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += jobs)
      for (std::size_t j = 0; j < n; ++j)
        if (catalog.contains(j, i)) rows[i].emplace_back(j, mu_closed(catalog.field(), catalog[i], catalog[j]));
  };
  if (jobs <= 1) {
    jobs = 1;
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
  }
  AglMuTable table;
  table.q = catalog.field().q();
  for (std::size_t i = 0; i < n; ++i)
    for (auto& [j, v] : rows[i]) table.mu.emplace_hint(table.mu.end(), std::pair{i, j}, std::move(v));
  return table;
}

/// The subgroup lattice as a Poset, labels = catalog indices.
inline Poset subgroup_poset(const GroupCatalog& catalog) {
  return Poset::from_relation(catalog.size(), [&](std::size_t i, std::size_t j) { return catalog.contains(j, i); });
}

inline constexpr std::size_t kDefaultOracleCap = 2000;

/// The same table from the defining recursion on the containment poset.
inline AglMuTable mu_table_oracle(const GroupCatalog& catalog, std::size_t cap = kDefaultOracleCap) {
  if (catalog.size() > cap)
    throw Error(ErrorKind::SizeCap, std::to_string(catalog.size()) + " subgroups exceed the oracle cap " + std::to_string(cap));
  const auto poset = subgroup_poset(catalog);
  const auto table = mu_recursive(poset);
  AglMuTable out;
  out.q = catalog.field().q();
  for (std::size_t i = 0; i < poset.size(); ++i)
    for (std::size_t j = 0; j < poset.size(); ++j)
      if (poset.leq(i, j)) out.mu.emplace_hint(out.mu.end(), std::pair{i, j}, table(i, j));
  return out;
}

}  // namespace aglmu
