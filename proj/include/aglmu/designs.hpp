#pragma once

// Applications of the subgroup Möbius function: k-subsets of F_q with a
// prescribed stabilizer (and hence 2-designs admitting AGL(1, F_q)), and the
// Eulerian function counting generating tuples.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "aglmu/error.hpp"
#include "aglmu/integer.hpp"
#include "aglmu/mobius.hpp"
#include "aglmu/subgroups.hpp"

namespace aglmu {

struct OrbitPartition {
  Subgroup subgroup;
  /// Each orbit sorted; orbits ordered by their least element.
  std::vector<std::vector<FieldElement>> orbits;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& o : orbits) out.push_back(o.size());
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Orbits of x -> ax + b on F_q; connected components under the generators.
inline OrbitPartition orbits(const GaloisField& field, const Subgroup& s) {
  const u64 q = field.q();
  std::vector<u64> parent(q);
  std::iota(parent.begin(), parent.end(), u64{0});
  auto find = [&](u64 x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto gens = generators(field, s);
  for (u64 idx = 0; idx < q; ++idx) {
    const auto x = field.from_index(idx);
    for (const auto& g : gens) {
      const u64 a = find(idx);
      const u64 b = find(field.index(apply(field, g, x)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<u64, std::vector<FieldElement>> groups;
  for (u64 idx = 0; idx < q; ++idx) groups[find(idx)].push_back(field.from_index(idx));
  OrbitPartition out{s, {}};
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.orbits.push_back(std::move(members));
  }
  std::sort(out.orbits.begin(), out.orbits.end());
  return out;
}

/// Coefficients of prod over orbits of (1 + z^|orbit|): entry k counts the
/// k-subsets fixed setwise by the subgroup.
inline std::vector<Integer> fixed_subset_polynomial(const GaloisField& field, const Subgroup& s) {
  std::vector<Integer> poly{1};
  for (const auto& orbit : orbits(field, s).orbits) {
    const auto len = orbit.size();
    std::vector<Integer> next(poly.size() + len);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + len] += poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

inline Integer f_k(const GaloisField& field, const Subgroup& s, long long k) {
  if (k < 0 || static_cast<u64>(k) > field.q())
    throw Error(ErrorKind::KOutOfRange, "k = " + std::to_string(k) + " outside [0, q]");
  return fixed_subset_polynomial(field, s)[static_cast<std::size_t>(k)];
}

/// Number of k-subsets whose full stabilizer is exactly catalog[h]:
/// sum over K ⊇ H of mu(H, K) f_k(K).
inline Integer g_k(const GroupCatalog& catalog, const AglMuTable& table, std::size_t h, long long k) {
  const auto& field = catalog.field();
  if (k < 0 || static_cast<u64>(k) > field.q())
    throw Error(ErrorKind::KOutOfRange, "k = " + std::to_string(k) + " outside [0, q]");
  Integer total = 0;
  for (auto it = table.mu.lower_bound({h, 0}); it != table.mu.end() && it->first.first == h; ++it) {
    if (it->second == 0) continue;
    total += it->second * f_k(field, catalog[it->first.second], k);
  }
  return total;
}

struct Lambda {
  Integer raw_num;  ///< k(k-1)
  Integer raw_den;  ///< |H|
  Integer num;
  Integer den;
  bool integral = false;
};

/// lambda for the 2-(q, k, lambda) design with base block stabilizer of the
/// given order: (|G|/|H|) k(k-1) / (q(q-1)) = k(k-1)/|H|, reduced.
inline Lambda lambda_param(u64 q, long long k, u64 order_h) {
  if (k < 0 || static_cast<u64>(k) > q) throw Error(ErrorKind::KOutOfRange, "k = " + std::to_string(k) + " outside [0, q]");
  if (order_h == 0 || (q * (q - 1)) % order_h != 0)
    throw Error(ErrorKind::InvalidOrder, std::to_string(order_h) + " does not divide |G| = " + std::to_string(q * (q - 1)));
  Lambda l;
  l.raw_num = Integer(k) * Integer(k - 1);
  l.raw_den = order_h;
  const Integer g = l.raw_num == 0 ? l.raw_den : Integer(boost::multiprecision::gcd(l.raw_num, l.raw_den));
  l.num = l.raw_num / g;
  l.den = l.raw_den / g;
  l.integral = l.den == 1;
  return l;
}

struct DesignRow {
  std::size_t subgroup_index = 0;
  u64 order = 0;
  long long k = 0;
  Integer f_k;
  Integer g_k;
  Lambda lambda;

  /// Some k-subset has exactly this stabilizer, so its orbit is a design.
  bool realizable() const { return g_k > 0; }
};

struct DesignReport {
  u64 q = 0;
  static constexpr int t = 2;
  long long k_min = 0;
  long long k_max = 0;
  std::vector<DesignRow> rows;
};

inline DesignReport design_scan(const GroupCatalog& catalog, const AglMuTable& table, long long k_min, long long k_max) {
  const auto& field = catalog.field();
  const u64 q = field.q();
  if (k_min < 0 || k_max < k_min || static_cast<u64>(k_max) > q)
    throw Error(ErrorKind::KOutOfRange, "k range [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "] not within [0, q]");
  std::vector<std::vector<Integer>> polys;
  polys.reserve(catalog.size());
  for (const auto& s : catalog.all()) polys.push_back(fixed_subset_polynomial(field, s));

  DesignReport report;
  report.q = q;
  report.k_min = k_min;
  report.k_max = k_max;
  for (std::size_t h = 0; h < catalog.size(); ++h) {
    for (long long k = k_min; k <= k_max; ++k) {
      DesignRow row;
      row.subgroup_index = h;
      row.order = catalog[h].order();
      row.k = k;
      row.f_k = polys[h][static_cast<std::size_t>(k)];
      for (auto it = table.mu.lower_bound({h, 0}); it != table.mu.end() && it->first.first == h; ++it)
        row.g_k += it->second * polys[it->first.second][static_cast<std::size_t>(k)];
      row.lambda = lambda_param(q, k, row.order);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

/// Number of ordered m-tuples generating the whole group:
/// sum over H of mu(H, G) |H|^m.
inline Integer eulerian_phi(const GroupCatalog& catalog, const AglMuTable& table, u64 m) {
  const auto top = catalog.full_index();
  Integer total = 0;
  for (std::size_t h = 0; h < catalog.size(); ++h) {
    const auto mu = table.at(h, top);
    if (!mu || *mu == 0) continue;
    total += *mu * ipow(Integer(catalog[h].order()), m);
  }
  return total;
}

}  // namespace aglmu
