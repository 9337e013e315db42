#pragma once

// Additive subgroups of F_q stored by a canonical F_p basis, and the subfield
// module structure on top of them.
//
// A Submodule is always kept as an F_p-subspace in reduced row echelon form:
// pivots scaled to 1, pivot columns cleared in every other row, rows ordered
// by pivot column. Whether it is also an F_r-module for a subfield F_r is a
// predicate (is_module_over), never part of the representation.

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "aglmu/error.hpp"
#include "aglmu/gf.hpp"
#include "aglmu/integer.hpp"
#include "aglmu/numtheory.hpp"

namespace aglmu {

class Submodule {
 public:
  Submodule() = default;

  static Submodule zero(const GaloisField& field) { return Submodule(field.p(), field.n()); }

  static Submodule whole(const GaloisField& field) {
    Submodule s(field.p(), field.n());
    for (u32 i = 0; i < field.n(); ++i) {
      std::vector<u32> row(field.n(), 0);
      row[i] = 1;
      s.basis_.emplace_back(std::move(row));
    }
    return s;
  }

  /// F_p-span of an arbitrary generating set.
  static Submodule span(const GaloisField& field, std::span<const FieldElement> gens) {
    Submodule s(field.p(), field.n());
    for (const auto& g : gens) {
      field.check(g);
      s.insert(g);
    }
    return s;
  }

  std::size_t dim_p() const noexcept { return basis_.size(); }
  const std::vector<FieldElement>& basis() const noexcept { return basis_; }
  u64 prime() const noexcept { return p_; }
  u32 length() const noexcept { return n_; }

  /// Number of elements, p^dim_p.
  u64 size() const { return *nt::checked_pow(p_, basis_.size()); }

  /// Canonical coset representative of v modulo this subspace: v with every
  /// pivot coordinate cleared, which is also the lexicographically smallest
  /// element of v + H.
  FieldElement reduce(const FieldElement& v) const {
    std::vector<u32> c = v.coeffs();
    for (const auto& row : basis_) {
      const std::size_t piv = pivot(row);
      const u64 f = c[piv];
      if (f == 0) continue;
      for (std::size_t i = piv; i < n_; ++i) c[i] = static_cast<u32>((c[i] + p_ - nt::mulmod(f, row[i], p_)) % p_);
    }
    return FieldElement(std::move(c));
  }

  bool contains(const FieldElement& v) const { return reduce(v).is_zero(); }

  bool is_subset_of(const Submodule& other) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const FieldElement& b) { return other.contains(b); });
  }

  /// Sum of subspaces.
  Submodule join(const Submodule& other) const {
    Submodule s = *this;
    for (const auto& b : other.basis_) s.insert(b);
    return s;
  }

  Submodule with(const FieldElement& v) const {
    Submodule s = *this;
    s.insert(v);
    return s;
  }

  /// All members, lexicographically sorted.
  std::vector<FieldElement> elements() const {
    std::vector<FieldElement> out;
    const u64 count = size();
    out.reserve(count);
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u64> acc(n_, 0);
      u64 rest = idx;
      for (const auto& row : basis_) {
        const u64 c = rest % p_;
        rest /= p_;
        if (c == 0) continue;
        for (std::size_t i = 0; i < n_; ++i) acc[i] = (acc[i] + c * row[i]) % p_;
      }
      std::vector<u32> v(acc.begin(), acc.end());
      out.emplace_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Ordered by dimension, then basis lexicographically.
  friend auto operator<=>(const Submodule& a, const Submodule& b) {
    if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
    return a.basis_ <=> b.basis_;
  }
  friend bool operator==(const Submodule& a, const Submodule& b) { return a.basis_ == b.basis_; }

 private:
  Submodule(u64 p, u32 n) : p_(p), n_(n) {}

  static std::size_t pivot(const FieldElement& row) {
    std::size_t i = 0;
    while (row[i] == 0) ++i;
    return i;
  }

  void insert(const FieldElement& v) {
    FieldElement r = reduce(v);
    if (r.is_zero()) return;
    std::vector<u32> c = r.coeffs();
    const std::size_t piv = pivot(r);
    const u64 inv = detail::inv_mod_prime(c[piv], p_);
    for (auto& x : c) x = static_cast<u32>(nt::mulmod(x, inv, p_));
    FieldElement row(std::move(c));
    for (auto& other : basis_) {
      const u64 f = other[piv];
      if (f == 0) continue;
      std::vector<u32> o = other.coeffs();
      for (std::size_t i = 0; i < n_; ++i) o[i] = static_cast<u32>((o[i] + p_ - nt::mulmod(f, row[i], p_)) % p_);
      other = FieldElement(std::move(o));
    }
    auto pos = std::find_if(basis_.begin(), basis_.end(), [&](const FieldElement& b) { return pivot(b) > piv; });
    basis_.insert(pos, std::move(row));
  }

  u64 p_ = 2;
  u32 n_ = 1;
  std::vector<FieldElement> basis_;
};

/// A subfield F_r of F_q, r = p^m with m | n.
struct SubfieldTag {
  u64 r = 2;
  u32 m = 1;

  friend bool operator==(const SubfieldTag&, const SubfieldTag&) = default;
};

inline SubfieldTag subfield_tag(const GaloisField& field, u64 r) {
  u32 m = 0;
  u64 x = 1;
  while (x < r) {
    x *= field.p();
    ++m;
  }
  if (x != r || m == 0 || field.n() % m != 0)
    throw Error(ErrorKind::NotDivisor, std::to_string(r) + " is not the order of a subfield of GF(" +
                                           std::to_string(field.q()) + ")");
  return SubfieldTag{r, m};
}

/// Smallest power of p congruent to 1 mod d (1 when d = 1).
inline u64 p_of_d(u64 p, u64 d) {
  if (d == 0 || d % p == 0)
    throw Error(ErrorKind::CharDividesD, std::to_string(p) + " divides " + std::to_string(d));
  if (d == 1) return 1;
  const u64 m = nt::multiplicative_order(p, d);
  const auto r = nt::checked_pow(p, m);
  if (!r) throw Error(ErrorKind::SizeCap, "p(d) overflows");
  return *r;
}

/// Order of F_p(a) for a of multiplicative order d: p(d), read as p when d = 1.
inline u64 coefficient_field_order(u64 p, u64 d) { return d == 1 ? p : p_of_d(p, d); }

/// F_r-span of a generating set: the F_p-span of {s^i g : 0 <= i < m}, s a
/// primitive element of F_r.
inline Submodule r_span(const GaloisField& field, std::span<const FieldElement> gens, SubfieldTag r) {
  const FieldElement s = field.subfield_generator(r.r);
  std::vector<FieldElement> all;
  for (const auto& g : gens) {
    FieldElement x = g;
    for (u32 i = 0; i < r.m; ++i) {
      all.push_back(x);
      x = field.mul(x, s);
    }
  }
  return Submodule::span(field, all);
}

inline bool is_module_over(const GaloisField& field, const Submodule& h, SubfieldTag r) {
  const FieldElement s = field.subfield_generator(r.r);
  return std::all_of(h.basis().begin(), h.basis().end(),
                     [&](const FieldElement& b) { return h.contains(field.mul(s, b)); });
}

/// Largest subfield F_r with H an F_r-module, i.e. {x : xH ⊆ H}.
inline SubfieldTag stabilizer_field(const GaloisField& field, const Submodule& h) {
  for (u32 m = field.n(); m >= 1; --m) {
    if (field.n() % m != 0) continue;
    SubfieldTag tag{*nt::checked_pow(field.p(), m), m};
    if (is_module_over(field, h, tag)) return tag;
  }
  return SubfieldTag{field.p(), 1};
}

/// All F_r-subspaces of F_q, sorted by (dim_p, basis).
inline std::vector<Submodule> enumerate_submodules(const GaloisField& field, SubfieldTag r) {
  std::set<Submodule> found;
  std::vector<Submodule> level{Submodule::zero(field)};
  found.insert(level.front());
  const auto elems = field.all_elements();
  while (!level.empty()) {
    std::set<Submodule> next;
    for (const auto& u : level) {
      for (const auto& v : elems) {
        if (v.is_zero() || u.reduce(v) != v) continue;
        std::vector<FieldElement> gens = u.basis();
        gens.push_back(v);
        Submodule w = r_span(field, gens, r);
        if (!found.contains(w)) next.insert(w);
      }
    }
    found.insert(next.begin(), next.end());
    level.assign(next.begin(), next.end());
  }
  return {found.begin(), found.end()};
}

/// dim over F_r of H2/H1.
inline std::size_t quotient_dim(const GaloisField& field, const Submodule& h1, const Submodule& h2, SubfieldTag r) {
  if (!h1.is_subset_of(h2)) throw Error(ErrorKind::NotContained, "H1 is not contained in H2");
  if (!is_module_over(field, h1, r) || !is_module_over(field, h2, r))
    throw Error(ErrorKind::NotModule, "not an F_" + std::to_string(r.r) + "-module");
  const std::size_t diff = h2.dim_p() - h1.dim_p();
  if (diff % r.m != 0) throw Error(ErrorKind::NonIntegralDim, "F_p dimension gap not divisible by m");
  return diff / r.m;
}

/// Möbius function of the subspace lattice over F_r across a codimension-l step.
inline Integer mu_subspace(std::size_t l, u64 r) {
  Integer v = ipow(Integer(r), static_cast<u64>(l) * (l == 0 ? 0 : l - 1) / 2);
  return (l % 2 == 0) ? v : Integer(-v);
}

/// Brute-force check of the subfield-descent identity
///   sum over F_r-subspaces L of V with F_q'-span(L) = V of mu_r(0, L) = mu_q'(0, V)
/// for V an F_q'-submodule of F_q and F_r ⊆ F_q'.
inline bool subfield_descent_holds(const GaloisField& field, SubfieldTag r, SubfieldTag qprime, const Submodule& v) {
  if (qprime.m % r.m != 0)
    throw Error(ErrorKind::NotDivisor, "F_" + std::to_string(r.r) + " is not a subfield of F_" + std::to_string(qprime.r));
  if (!is_module_over(field, v, qprime)) throw Error(ErrorKind::NotModule, "V is not an F_q'-module");
  Integer lhs = 0;
  for (const auto& l : enumerate_submodules(field, r)) {
    if (!l.is_subset_of(v)) continue;
    if (r_span(field, l.basis(), qprime) != v) continue;
    lhs += mu_subspace(l.dim_p() / r.m, r.r);
  }
  const Integer rhs = mu_subspace(v.dim_p() / qprime.m, qprime.r);
  return lhs == rhs;
}

}  // namespace aglmu
