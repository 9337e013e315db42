#pragma once

// Subgroups of AGL(1, F_q) = { x -> ax + b : a != 0 }.
//
// Every subgroup is S(A, b, H) = <(A, b)> ⋉ {x -> x + h : h ∈ H} with
// A = gamma^((q-1)/d) for a unique d | q-1, H a unique F_{p(d)}-submodule of
// F_q, and b unique modulo H (b = 0 when d = 1). A Subgroup value stores
// exactly that triple with b reduced to its canonical coset representative,
// so structural equality is subgroup equality.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "aglmu/error.hpp"
#include "aglmu/gf.hpp"
#include "aglmu/numtheory.hpp"
#include "aglmu/submodules.hpp"

namespace aglmu {

/// x -> a x + b.
struct AffineMap {
  FieldElement a;
  FieldElement b;

  friend auto operator<=>(const AffineMap&, const AffineMap&) = default;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

inline AffineMap identity_map(const GaloisField& field) { return {field.one(), field.zero()}; }

inline AffineMap translation(const GaloisField& field, const FieldElement& c) { return {field.one(), c}; }

/// (f ∘ g)(x) = f(g(x)): (a1, b1) ∘ (a2, b2) = (a1 a2, a1 b2 + b1).
inline AffineMap compose(const GaloisField& field, const AffineMap& f, const AffineMap& g) {
  return {field.mul(f.a, g.a), field.add(field.mul(f.a, g.b), f.b)};
}

inline AffineMap inverse(const GaloisField& field, const AffineMap& f) {
  const auto ainv = field.inv(f.a);
  return {ainv, field.neg(field.mul(ainv, f.b))};
}

inline FieldElement apply(const GaloisField& field, const AffineMap& f, const FieldElement& x) {
  return field.add(field.mul(f.a, x), f.b);
}

struct Subgroup {
  u64 d = 1;
  FieldElement b;
  Submodule h;

  u64 order() const { return d * h.size(); }

  /// Ordered by d, then H, then the coset representative b.
  friend auto operator<=>(const Subgroup& x, const Subgroup& y) {
    if (auto c = x.d <=> y.d; c != 0) return c;
    if (auto c = x.h <=> y.h; c != 0) return c;
    return x.b <=> y.b;
  }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// A = gamma^((q-1)/d), the linear part of the distinguished generator.
inline FieldElement linear_part(const GaloisField& field, u64 d) { return field.gamma_pow((field.q() - 1) / d); }

/// Validates the triple and puts b into canonical form.
inline Subgroup make_subgroup(const GaloisField& field, u64 d, const FieldElement& b, Submodule h) {
  if (d == 0 || (field.q() - 1) % d != 0)
    throw Error(ErrorKind::InvalidSubgroup, std::to_string(d) + " does not divide q-1 = " + std::to_string(field.q() - 1));
  field.check(b);
  const auto r = subfield_tag(field, coefficient_field_order(field.p(), d));
  if (!is_module_over(field, h, r))
    throw Error(ErrorKind::InvalidSubgroup, "H is not an F_" + std::to_string(r.r) + "-module");
  Subgroup s;
  s.d = d;
  s.b = d == 1 ? field.zero() : h.reduce(b);
  s.h = std::move(h);
  return s;
}

inline Subgroup trivial_subgroup(const GaloisField& field) {
  return make_subgroup(field, 1, field.zero(), Submodule::zero(field));
}

inline Subgroup full_group(const GaloisField& field) {
  return make_subgroup(field, field.q() - 1, field.zero(), Submodule::whole(field));
}

/// 1 + A + ... + A^(k-1).
inline FieldElement geometric_sum(const GaloisField& field, const FieldElement& a, u64 k) {
  if (a == field.one()) return field.constant(k % field.p());
  return field.div(field.sub(field.pow(a, k), field.one()), field.sub(a, field.one()));
}

inline bool member(const GaloisField& field, const AffineMap& g, const Subgroup& s) {
  field.check(g.a);
  field.check(g.b);
  if (g.a.is_zero()) return false;
  const u64 step = (field.q() - 1) / s.d;
  const u64 lg = field.log(g.a);
  if (lg % step != 0) return false;
  const u64 k = lg / step;
  const auto offset = field.mul(s.b, geometric_sum(field, linear_part(field, s.d), k));
  return s.h.contains(field.sub(g.b, offset));
}

/// The generating set {(A, b)} ∪ {(1, h) : h in the basis of H}.
inline std::vector<AffineMap> generators(const GaloisField& field, const Subgroup& s) {
  std::vector<AffineMap> gens{{linear_part(field, s.d), s.b}};
  for (const auto& h : s.h.basis()) gens.push_back(translation(field, h));
  return gens;
}

/// All d·|H| elements, sorted.
inline std::vector<AffineMap> elements(const GaloisField& field, const Subgroup& s) {
  const auto a = linear_part(field, s.d);
  const auto hs = s.h.elements();
  std::vector<AffineMap> out;
  out.reserve(s.d * hs.size());
  FieldElement ak = field.one();
  for (u64 k = 0; k < s.d; ++k) {
    const auto offset = field.mul(s.b, geometric_sum(field, a, k));
    for (const auto& h : hs) out.push_back({ak, field.add(offset, h)});
    ak = field.mul(ak, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Closure of a generating set, recognized as its canonical triple.
inline Subgroup from_generators(const GaloisField& field, std::span<const AffineMap> gens) {
  std::set<AffineMap> seen{identity_map(field)};
  std::deque<AffineMap> queue(gens.begin(), gens.end());
  for (const auto& g : gens) seen.insert(g);
  while (!queue.empty()) {
    const AffineMap x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      AffineMap y = compose(field, x, g);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  std::set<FieldElement> linear;
  std::vector<FieldElement> translations;
  for (const auto& e : seen) {
    linear.insert(e.a);
    if (e.a == field.one()) translations.push_back(e.b);
  }
  const u64 d = linear.size();
  Submodule h = Submodule::span(field, translations);
  const auto a = linear_part(field, d);
  auto it = std::find_if(seen.begin(), seen.end(), [&](const AffineMap& e) { return e.a == a; });
  return make_subgroup(field, d, it->b, std::move(h));
}

/// t_c S t_c^{-1} for the translation t_c = (1, c): (A, b) becomes (A, b - (A-1)c).
inline Subgroup conjugate_by_translation(const GaloisField& field, const Subgroup& s, const FieldElement& c) {
  const auto a = linear_part(field, s.d);
  const auto b = field.sub(s.b, field.mul(field.sub(a, field.one()), c));
  return make_subgroup(field, s.d, b, s.h);
}

/// Conjugates S by a translation into the form S(A, 0, H). Returns the
/// normalized subgroup and the translation used.
inline std::pair<Subgroup, AffineMap> normalize_conjugate(const GaloisField& field, const Subgroup& s) {
  if (s.d == 1 || s.b.is_zero()) return {s, identity_map(field)};
  const auto a = linear_part(field, s.d);
  const auto c = field.div(s.b, field.sub(a, field.one()));
  return {make_subgroup(field, s.d, field.zero(), s.h), translation(field, c)};
}

/// outer ⊇ inner, decided by membership of inner's generators.
inline bool contains(const GaloisField& field, const Subgroup& outer, const Subgroup& inner) {
  if (inner.d > outer.d || outer.d % inner.d != 0) return false;
  if (inner.h.dim_p() > outer.h.dim_p()) return false;
  for (const auto& g : generators(field, inner))
    if (!member(field, g, outer)) return false;
  return true;
}

/// Minimal strict supergroups, read off from the subgroup classification.
inline std::vector<Subgroup> immediate_supergroups(const GaloisField& field, const Subgroup& s) {
  const u64 top = field.q() - 1;
  if (s.d == top && s.h.dim_p() == field.n()) throw Error(ErrorKind::FullGroup, "the full group has no supergroups");

  auto [norm, t] = normalize_conjugate(field, s);
  const auto& h = norm.h;
  const u64 hp = stabilizer_field(field, h).r;
  const auto r = subfield_tag(field, coefficient_field_order(field.p(), norm.d));

  std::set<Subgroup> out;
  if (norm.d != 1) {
    for (u64 e : nt::prime_divisors((hp - 1) / norm.d)) out.insert(make_subgroup(field, norm.d * e, field.zero(), h));
  } else {
    const auto reps = [&] {
      std::set<FieldElement> rs;
      for (const auto& x : field.all_elements()) rs.insert(h.reduce(x));
      return rs;
    }();
    for (u64 e : nt::prime_divisors(hp - 1))
      for (const auto& b : reps) out.insert(make_subgroup(field, e, b, h));
  }
  for (const auto& v : field.all_elements()) {
    if (v.is_zero() || h.reduce(v) != v) continue;
    std::vector<FieldElement> gens = h.basis();
    gens.push_back(v);
    out.insert(make_subgroup(field, norm.d, field.zero(), r_span(field, gens, r)));
  }

  if (t.b.is_zero()) return {out.begin(), out.end()};
  std::set<Subgroup> back;
  const auto c = field.neg(t.b);
  for (const auto& k : out) back.insert(conjugate_by_translation(field, k, c));
  return {back.begin(), back.end()};
}

namespace detail {

struct ElementSlot {
  std::once_flag once;
  std::vector<AffineMap> elements;
};

}  // namespace detail

inline constexpr u64 kDefaultContainmentThreshold = 128;

/// Every subgroup of AGL(1, F_q) in canonical order, with containment.
class GroupCatalog {
 public:
  GroupCatalog(std::shared_ptr<const GaloisField> field, std::vector<Subgroup> all,
               u64 containment_threshold = kDefaultContainmentThreshold)
      : field_(std::move(field)), all_(std::move(all)) {
    std::sort(all_.begin(), all_.end());
    for (std::size_t i = 0; i < all_.size(); ++i) by_order_[all_[i].order()].push_back(i);
    slots_ = std::make_shared<std::vector<detail::ElementSlot>>(all_.size());
    if (field_->q() <= containment_threshold) {
      const auto n = all_.size();
      matrix_.assign(n * n, false);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) matrix_[i * n + j] = aglmu::contains(*field_, all_[i], all_[j]);
    }
  }

  const GaloisField& field() const noexcept { return *field_; }
  const std::shared_ptr<const GaloisField>& field_ptr() const noexcept { return field_; }
  const GeneratorCertificate& gamma() const noexcept { return field_->generator(); }
  std::size_t size() const noexcept { return all_.size(); }
  const std::vector<Subgroup>& all() const noexcept { return all_; }
  const Subgroup& operator[](std::size_t i) const { return all_[i]; }
  const std::map<u64, std::vector<std::size_t>>& index_by_order() const noexcept { return by_order_; }

  std::optional<std::size_t> index_of(const Subgroup& s) const {
    auto it = std::lower_bound(all_.begin(), all_.end(), s);
    if (it == all_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - all_.begin());
  }

  std::size_t trivial_index() const { return 0; }
  std::size_t full_index() const { return all_.size() - 1; }

  /// all()[outer] ⊇ all()[inner].
  bool contains(std::size_t outer, std::size_t inner) const {
    if (!matrix_.empty()) return matrix_[outer * all_.size() + inner];
    return aglmu::contains(*field_, all_[outer], all_[inner]);
  }

  bool has_containment_matrix() const noexcept { return !matrix_.empty(); }

  /// Element list of a subgroup, computed on first use. Safe to call concurrently.
  const std::vector<AffineMap>& elements(std::size_t i) const {
    auto& slot = (*slots_)[i];
    std::call_once(slot.once, [&] { slot.elements = aglmu::elements(*field_, all_[i]); });
    return slot.elements;
  }

 private:
  std::shared_ptr<const GaloisField> field_;
  std::vector<Subgroup> all_;
  std::map<u64, std::vector<std::size_t>> by_order_;
  std::vector<bool> matrix_;
  std::shared_ptr<std::vector<detail::ElementSlot>> slots_;
};

/// All subgroups: for each d | q-1 and each F_{p(d)}-submodule H, one
/// subgroup per coset of H when d != 1 and one when d = 1.
inline GroupCatalog enumerate_all(std::shared_ptr<const GaloisField> field, u64 size_cap = kDefaultSizeCap,
                                  u64 containment_threshold = kDefaultContainmentThreshold) {
  if (field->q() > size_cap)
    throw Error(ErrorKind::SizeCap, "q = " + std::to_string(field->q()) + " exceeds " + std::to_string(size_cap));
  const auto elems = field->all_elements();
  std::vector<Subgroup> all;
  for (u64 d : nt::divisors(field->q() - 1)) {
    const auto r = subfield_tag(*field, coefficient_field_order(field->p(), d));
    for (const auto& h : enumerate_submodules(*field, r)) {
      if (d == 1) {
        all.push_back(make_subgroup(*field, 1, field->zero(), h));
        continue;
      }
      std::set<FieldElement> reps;
      for (const auto& x : elems) reps.insert(h.reduce(x));
      for (const auto& b : reps) all.push_back(make_subgroup(*field, d, b, h));
    }
  }
  return GroupCatalog(std::move(field), std::move(all), containment_threshold);
}

}  // namespace aglmu
