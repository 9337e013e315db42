#pragma once

// Finite posets and their Möbius functions: the defining recursion, Möbius
// inversion, and both forms of Rota's crosscut theorem.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aglmu/error.hpp"
#include "aglmu/integer.hpp"

namespace aglmu {

class Poset {
 public:
  Poset() = default;

  /// Builds and validates a partial order; leq(i, j) means i <= j.
  /// Labels default to 0..n-1.
  static Poset from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                             std::vector<std::size_t> labels = {}) {
    Poset p;
    p.n_ = n;
    p.leq_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p.leq_[i * n + j] = leq(i, j);
    if (labels.empty()) {
      labels.resize(n);
      std::iota(labels.begin(), labels.end(), std::size_t{0});
    }
    if (labels.size() != n) throw Error(ErrorKind::InvalidPoset, "label count does not match size");
    p.labels_ = std::move(labels);
    p.validate();
    p.order_by_height();
    return p;
  }

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * n_ + j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t label(std::size_t i) const { return labels_[i]; }

  /// A linear extension: every element appears after everything below it.
  const std::vector<std::size_t>& linear_extension() const noexcept { return linear_; }

  std::optional<std::size_t> bottom() const {
    for (std::size_t i = 0; i < n_; ++i) {
      bool all = true;
      for (std::size_t j = 0; j < n_ && all; ++j) all = leq(i, j);
      if (all) return i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> top() const {
    for (std::size_t i = 0; i < n_; ++i) {
      bool all = true;
      for (std::size_t j = 0; j < n_ && all; ++j) all = leq(j, i);
      if (all) return i;
    }
    return std::nullopt;
  }

  /// Least upper bound, or nullopt if none is unique.
  std::optional<std::size_t> join(std::size_t a, std::size_t b) const {
    std::optional<std::size_t> best;
    for (std::size_t z = 0; z < n_; ++z) {
      if (!leq(a, z) || !leq(b, z)) continue;
      if (!best || leq(z, *best)) best = z;
    }
    if (!best) return std::nullopt;
    for (std::size_t z = 0; z < n_; ++z)
      if (leq(a, z) && leq(b, z) && !leq(*best, z)) return std::nullopt;
    return best;
  }

  std::optional<std::size_t> meet(std::size_t a, std::size_t b) const {
    std::optional<std::size_t> best;
    for (std::size_t z = 0; z < n_; ++z) {
      if (!leq(z, a) || !leq(z, b)) continue;
      if (!best || leq(*best, z)) best = z;
    }
    if (!best) return std::nullopt;
    for (std::size_t z = 0; z < n_; ++z)
      if (leq(z, a) && leq(z, b) && !leq(z, *best)) return std::nullopt;
    return best;
  }

  /// The closed interval [x, y] as its own poset; labels map back to this one's
  /// labels.
  Poset interval(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> members;
    for (std::size_t z = 0; z < n_; ++z)
      if (leq(x, z) && leq(z, y)) members.push_back(z);
    std::vector<std::size_t> labels;
    for (auto z : members) labels.push_back(labels_[z]);
    return from_relation(
        members.size(), [&](std::size_t i, std::size_t j) { return leq(members[i], members[j]); }, std::move(labels));
  }

  /// Minimal elements of P minus its bottom.
  std::vector<std::size_t> atoms() const {
    std::vector<std::size_t> out;
    const auto b = bottom();
    for (std::size_t x = 0; x < n_; ++x) {
      if (b && x == *b) continue;
      bool minimal = true;
      for (std::size_t z = 0; z < n_ && minimal; ++z)
        if (z != x && (!b || z != *b) && leq(z, x)) minimal = false;
      if (minimal) out.push_back(x);
    }
    return out;
  }

  /// Maximal elements of P minus its top.
  std::vector<std::size_t> coatoms() const {
    std::vector<std::size_t> out;
    const auto t = top();
    for (std::size_t x = 0; x < n_; ++x) {
      if (t && x == *t) continue;
      bool maximal = true;
      for (std::size_t z = 0; z < n_ && maximal; ++z)
        if (z != x && (!t || z != *t) && leq(x, z)) maximal = false;
      if (maximal) out.push_back(x);
    }
    return out;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!leq(i, i)) throw Error(ErrorKind::InvalidPoset, "relation is not reflexive at " + std::to_string(i));
      for (std::size_t j = i + 1; j < n_; ++j)
        if (leq(i, j) && leq(j, i))
          throw Error(ErrorKind::InvalidPoset,
                      "relation is not antisymmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (!leq(i, j)) continue;
        for (std::size_t k = 0; k < n_; ++k)
          if (leq(j, k) && !leq(i, k))
            throw Error(ErrorKind::InvalidPoset, "relation is not transitive at (" + std::to_string(i) + ", " +
                                                     std::to_string(j) + ", " + std::to_string(k) + ")");
      }
  }

  void order_by_height() {
    std::vector<std::size_t> below(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) below[i] += leq(j, i);
    linear_.resize(n_);
    std::iota(linear_.begin(), linear_.end(), std::size_t{0});
    std::stable_sort(linear_.begin(), linear_.end(), [&](auto a, auto b) { return below[a] < below[b]; });
  }

  std::size_t n_ = 0;
  std::vector<bool> leq_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> linear_;
};

/// mu(x, y) for every comparable pair of a poset.
class MoebiusTable {
 public:
  MoebiusTable() = default;
  MoebiusTable(Poset poset, std::vector<Integer> mu) : poset_(std::move(poset)), mu_(std::move(mu)) {}

  const Poset& poset() const noexcept { return poset_; }

  /// mu(x, y); zero when x is not below y.
  const Integer& operator()(std::size_t x, std::size_t y) const { return mu_[x * poset_.size() + y]; }

 private:
  Poset poset_;
  std::vector<Integer> mu_;
};

/// mu(x, x) = 1 and sum_{x <= z <= y} mu(x, z) = 0 for x < y, evaluated along a
/// linear extension.
inline MoebiusTable mu_recursive(const Poset& poset) {
  const std::size_t n = poset.size();
  std::vector<Integer> mu(n * n);
  const auto& order = poset.linear_extension();
  std::vector<std::size_t> up;
  for (std::size_t x = 0; x < n; ++x) {
    up.clear();
    for (auto z : order)
      if (poset.leq(x, z)) up.push_back(z);
    mu[x * n + x] = 1;
    for (std::size_t yi = 1; yi < up.size(); ++yi) {
      const auto y = up[yi];
      Integer sum = 0;
      for (std::size_t zi = 0; zi < yi; ++zi) {
        const auto z = up[zi];
        if (poset.leq(z, y)) sum += mu[x * n + z];
      }
      mu[x * n + y] = -sum;
    }
  }
  return MoebiusTable(poset, std::move(mu));
}

inline constexpr std::size_t kMaxCrosscutSize = 25;

namespace detail {

struct BoundedLattice {
  std::size_t bottom;
  std::size_t top;
};

inline BoundedLattice require_bounds(const Poset& poset) {
  const auto b = poset.bottom();
  const auto t = poset.top();
  if (!b || !t) throw Error(ErrorKind::NotLattice, "poset lacks a bottom or top element");
  return {*b, *t};
}

template <typename Op>
std::vector<std::size_t> operation_table(const Poset& poset, Op op, const char* name) {
  const std::size_t n = poset.size();
  std::vector<std::size_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto v = op(i, j);
      if (!v) throw Error(ErrorKind::NotLattice, std::string("no unique ") + name + " of " + std::to_string(i) + " and " + std::to_string(j));
      table[i * n + j] = table[j * n + i] = *v;
    }
  return table;
}

/// sum over E ⊆ set with fold(E) == target of (-1)^|E|, fold starting at start.
inline Integer signed_subset_sum(std::span<const std::size_t> set, const std::vector<std::size_t>& table,
                                 std::size_t n, std::size_t start, std::size_t target) {
  Integer total = 0;
  // Depth-first over subsets, carrying the running fold.
  std::function<void(std::size_t, std::size_t, bool)> walk = [&](std::size_t i, std::size_t acc, bool odd) {
    if (i == set.size()) {
      if (acc == target) total += odd ? -1 : 1;
      return;
    }
    walk(i + 1, acc, odd);
    walk(i + 1, table[acc * n + set[i]], !odd);
  };
  walk(0, start, false);
  return total;
}

}  // namespace detail

/// mu(0, 1) = sum over E ⊆ A with join(E) = 1 of (-1)^|E|, A a lower crosscut.
inline Integer mu_crosscut_lower(const Poset& poset, std::span<const std::size_t> crosscut) {
  const auto [bottom, top] = detail::require_bounds(poset);
  if (crosscut.size() > kMaxCrosscutSize)
    throw Error(ErrorKind::CrosscutTooLarge, std::to_string(crosscut.size()) + " elements exceed the cap of " +
                                                 std::to_string(kMaxCrosscutSize));
  std::vector<bool> in(poset.size(), false);
  for (auto a : crosscut) {
    if (a >= poset.size() || a == bottom) throw Error(ErrorKind::NotCrosscut, "lower crosscut must avoid the bottom");
    in[a] = true;
  }
  for (std::size_t y = 0; y < poset.size(); ++y) {
    if (in[y] || y == bottom) continue;
    const bool covered = std::any_of(crosscut.begin(), crosscut.end(), [&](auto a) { return poset.less(a, y); });
    if (!covered) throw Error(ErrorKind::NotCrosscut, "element " + std::to_string(y) + " has nothing of A below it");
  }
  const auto joins = detail::operation_table(poset, [&](auto a, auto b) { return poset.join(a, b); }, "join");
  return detail::signed_subset_sum(crosscut, joins, poset.size(), bottom, top);
}

/// mu(0, 1) = sum over E ⊆ B with meet(E) = 0 of (-1)^|E|, B an upper crosscut.
inline Integer mu_crosscut_upper(const Poset& poset, std::span<const std::size_t> crosscut) {
  const auto [bottom, top] = detail::require_bounds(poset);
  if (crosscut.size() > kMaxCrosscutSize)
    throw Error(ErrorKind::CrosscutTooLarge, std::to_string(crosscut.size()) + " elements exceed the cap of " +
                                                 std::to_string(kMaxCrosscutSize));
  std::vector<bool> in(poset.size(), false);
  for (auto b : crosscut) {
    if (b >= poset.size() || b == top) throw Error(ErrorKind::NotCrosscut, "upper crosscut must avoid the top");
    in[b] = true;
  }
  for (std::size_t y = 0; y < poset.size(); ++y) {
    if (in[y] || y == top) continue;
    const bool covered = std::any_of(crosscut.begin(), crosscut.end(), [&](auto b) { return poset.less(y, b); });
    if (!covered) throw Error(ErrorKind::NotCrosscut, "element " + std::to_string(y) + " has nothing of B above it");
  }
  const auto meets = detail::operation_table(poset, [&](auto a, auto b) { return poset.meet(a, b); }, "meet");
  return detail::signed_subset_sum(crosscut, meets, poset.size(), top, bottom);
}

/// f_<=(x) = sum_{z <= x} f(z).
inline std::vector<Integer> summate(const Poset& poset, std::span<const Integer> f) {
  std::vector<Integer> out(poset.size());
  for (std::size_t x = 0; x < poset.size(); ++x)
    for (std::size_t z = 0; z < poset.size(); ++z)
      if (poset.leq(z, x)) out[x] += f[z];
  return out;
}

/// f(x) = sum_{z <= x} mu(z, x) f_<=(z).
inline std::vector<Integer> moebius_invert(const MoebiusTable& table, std::span<const Integer> fsum) {
  const auto& poset = table.poset();
  std::vector<Integer> out(poset.size());
  for (std::size_t x = 0; x < poset.size(); ++x)
    for (std::size_t z = 0; z < poset.size(); ++z)
      if (poset.leq(z, x)) out[x] += table(z, x) * fsum[z];
  return out;
}

inline std::vector<Integer> moebius_invert(const Poset& poset, std::span<const Integer> fsum) {
  return moebius_invert(mu_recursive(poset), fsum);
}

/// For the subgroup lattice of an elementary abelian p-group: checks that the
/// recursive mu equals (-1)^a p^(a choose 2) on every pair, where a is the
/// difference of log_p orders.
inline bool pgroup_mu_check(const Poset& poset, std::span<const std::size_t> log_order, u64 p) {
  const auto table = mu_recursive(poset);
  for (std::size_t x = 0; x < poset.size(); ++x)
    for (std::size_t y = 0; y < poset.size(); ++y) {
      if (!poset.leq(x, y)) continue;
      const u64 a = log_order[y] - log_order[x];
      Integer expected = ipow(Integer(p), a * (a == 0 ? 0 : a - 1) / 2);
      if (a % 2 == 1) expected = -expected;
      if (table(x, y) != expected) return false;
    }
  return true;
}

}  // namespace aglmu
