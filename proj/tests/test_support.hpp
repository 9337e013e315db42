#pragma once

// Test-only oracles. Nothing here goes through the subgroup classification,
// the closed formula, or the lattice code: subgroups are found by closing
// generating sets of raw affine maps, and field products by long division.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "aglmu/gf.hpp"

namespace aglmu::testing {

/// Schoolbook product followed by long division by the monic modulus.
inline std::vector<std::uint32_t> poly_mul_oracle(const std::vector<std::uint32_t>& a,
                                                  const std::vector<std::uint32_t>& b,
                                                  const std::vector<std::uint32_t>& modulus, std::uint64_t p) {
  std::vector<std::uint64_t> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  const std::size_t n = modulus.size() - 1;
  for (std::size_t k = prod.size(); k-- > n;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * modulus[i]) % p;
  }
  return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n)};
}

/// AGL(1, F_q) as raw integers: map (a, b) <-> a_index * q + b_index.
class RawAffineGroup {
 public:
  explicit RawAffineGroup(std::shared_ptr<const GaloisField> field) : field_(std::move(field)) {
    const std::uint64_t q = field_->q();
    for (std::uint64_t a = 1; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b) elements_.push_back(a * q + b);
    const auto size = q * q;
    mul_.assign(size * size, 0);
    for (auto x : elements_)
      for (auto y : elements_) {
        const auto ax = field_->from_index(x / q), bx = field_->from_index(x % q);
        const auto ay = field_->from_index(y / q), by = field_->from_index(y % q);
        const auto a = field_->poly_mul(ax, ay);
        const auto b = field_->add(field_->poly_mul(ax, by), bx);
        mul_[x * size + y] = field_->index(a) * q + field_->index(b);
      }
  }

  const std::vector<std::uint64_t>& elements() const { return elements_; }
  std::uint64_t identity() const { return field_->q(); }
  std::uint64_t compose(std::uint64_t x, std::uint64_t y) const { return mul_[x * field_->q() * field_->q() + y]; }

  /// Sorted element list of the subgroup generated by gens.
  std::vector<std::uint64_t> closure(const std::vector<std::uint64_t>& gens) const {
    std::set<std::uint64_t> seen{identity()};
    std::vector<std::uint64_t> frontier{identity()};
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (auto x : frontier)
        for (auto g : gens) {
          auto y = compose(x, g);
          if (seen.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  /// Every subgroup: cyclic subgroups, then pairwise joins to a fixed point.
  std::set<std::vector<std::uint64_t>> all_subgroups() const {
    std::set<std::vector<std::uint64_t>> found;
    for (auto g : elements_) found.insert(closure({g}));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<std::uint64_t>> snapshot(found.begin(), found.end());
      for (std::size_t i = 0; i < snapshot.size(); ++i)
        for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
          std::vector<std::uint64_t> gens = snapshot[i];
          gens.insert(gens.end(), snapshot[j].begin(), snapshot[j].end());
          if (found.insert(closure(gens)).second) grew = true;
        }
    }
    return found;
  }

  /// Ordered m-tuples generating the whole group, by enumeration (m <= 2).
  std::uint64_t generating_tuples(unsigned m) const {
    const auto full = elements_.size();
    std::uint64_t count = 0;
    if (m == 1) {
      for (auto g : elements_) count += closure({g}).size() == full;
    } else {
      for (auto g : elements_)
        for (auto h : elements_) count += closure({g, h}).size() == full;
    }
    return count;
  }

  std::uint64_t encode(const FieldElement& a, const FieldElement& b) const {
    return field_->index(a) * field_->q() + field_->index(b);
  }

 private:
  std::shared_ptr<const GaloisField> field_;
  std::vector<std::uint64_t> elements_;
  std::vector<std::uint64_t> mul_;
};

/// [n choose k]_r by the product formula.
inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t r) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (unsigned j = 0; j < n - i; ++j) a *= r;
    for (unsigned j = 0; j < i + 1; ++j) b *= r;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

inline std::shared_ptr<const GaloisField> field_ptr(std::uint64_t p, std::uint64_t n) {
  return std::make_shared<const GaloisField>(p, n);
}

}  // namespace aglmu::testing
