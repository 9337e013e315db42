#include <set>

#include <gtest/gtest.h>

#include "aglmu/subgroups.hpp"
#include "test_support.hpp"

using namespace aglmu;
using aglmu::testing::field_ptr;
using aglmu::testing::RawAffineGroup;

namespace {

std::vector<std::uint64_t> encode_all(const RawAffineGroup& raw, const std::vector<AffineMap>& maps) {
  std::vector<std::uint64_t> out;
  for (const auto& m : maps) out.push_back(raw.encode(m.a, m.b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Subgroup, MakeValidates) {
  GaloisField f4(2, 2);
  try {
    make_subgroup(f4, 2, f4.zero(), Submodule::zero(f4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSubgroup);
  }
  GaloisField f16(2, 4);
  const std::vector<FieldElement> one{f16.one()};
  try {
    make_subgroup(f16, 3, f16.zero(), Submodule::span(f16, one));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSubgroup);
  }
  // d = 1 forgets b.
  EXPECT_TRUE(make_subgroup(f16, 1, f16.gamma(), Submodule::zero(f16)).b.is_zero());
}

TEST(Subgroup, TrivialAndFull) {
  GaloisField f(3, 2);
  const auto triv = trivial_subgroup(f), full = full_group(f);
  EXPECT_EQ(triv.order(), 1u);
  EXPECT_EQ(full.order(), 72u);
  EXPECT_EQ(elements(f, triv), std::vector<AffineMap>{identity_map(f)});
  EXPECT_EQ(elements(f, full).size(), 72u);
}

TEST(Subgroup, MembershipMatchesElementList) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    const auto fp = field_ptr(p, n);
    const auto& f = *fp;
    const auto cat = enumerate_all(fp);
    const auto all = elements(f, full_group(f));
    for (const auto& s : cat.all()) {
      const auto el = elements(f, s);
      ASSERT_EQ(el.size(), s.order());
      const std::set<AffineMap> set(el.begin(), el.end());
      for (const auto& g : all) ASSERT_EQ(member(f, g, s), set.contains(g));
    }
  }
}

TEST(Subgroup, ElementsMatchRawClosureOfGenerators) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    const auto fp = field_ptr(p, n);
    const RawAffineGroup raw(fp);
    const auto cat = enumerate_all(fp);
    for (const auto& s : cat.all()) {
      std::vector<std::uint64_t> gens;
      for (const auto& g : generators(*fp, s)) gens.push_back(raw.encode(g.a, g.b));
      ASSERT_EQ(encode_all(raw, elements(*fp, s)), raw.closure(gens));
    }
  }
}

TEST(Subgroup, FromGeneratorsRoundTrip) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {7, 1}, {2, 3}, {3, 2}}) {
    const auto fp = field_ptr(p, n);
    const auto cat = enumerate_all(fp);
    for (const auto& s : cat.all()) {
      const auto el = elements(*fp, s);
      EXPECT_EQ(from_generators(*fp, el), s);
      const auto gens = generators(*fp, s);
      EXPECT_EQ(from_generators(*fp, gens), s);
    }
  }
}

TEST(Subgroup, FromGeneratorsExample) {
  GaloisField f(5, 1);
  // x -> 4x + 1 has order 2 and fixes 3.
  const std::vector<AffineMap> gens{{f.constant(4), f.constant(1)}};
  const auto s = from_generators(f, gens);
  EXPECT_EQ(s.d, 2u);
  EXPECT_EQ(s.h.dim_p(), 0u);
  EXPECT_EQ(s.b, f.constant(1));
  EXPECT_EQ(apply(f, gens[0], f.constant(3)), f.constant(3));
}

TEST(Subgroup, NormalizeConjugateElementwise) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {7, 1}, {2, 3}, {3, 2}}) {
    const auto fp = field_ptr(p, n);
    const auto& f = *fp;
    const auto cat = enumerate_all(fp);
    for (const auto& s : cat.all()) {
      const auto [norm, t] = normalize_conjugate(f, s);
      EXPECT_TRUE(norm.b.is_zero() || norm.d == 1);
      EXPECT_EQ(t.a, f.one());
      std::vector<AffineMap> conj;
      for (const auto& g : elements(f, s)) conj.push_back(compose(f, compose(f, t, g), inverse(f, t)));
      std::sort(conj.begin(), conj.end());
      ASSERT_EQ(conj, elements(f, norm));
    }
  }
}

TEST(Subgroup, ContainmentMatchesElementSets) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    const auto fp = field_ptr(p, n);
    const auto cat = enumerate_all(fp);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto& outer = cat.elements(i);
      for (std::size_t j = 0; j < cat.size(); ++j) {
        const auto& inner = cat.elements(j);
        const bool sub = std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
        ASSERT_EQ(cat.contains(i, j), sub);
        ASSERT_EQ(contains(*fp, cat[i], cat[j]), sub);
      }
    }
  }
}

TEST(Catalog, CountsMatchRawEnumeration) {
  for (auto [p, n, expect] : std::vector<std::tuple<u64, u64, std::size_t>>{{2, 1, 2}, {3, 1, 6}, {2, 2, 10}, {5, 1, 14}}) {
    const auto fp = field_ptr(p, n);
    const RawAffineGroup raw(fp);
    const auto cat = enumerate_all(fp);
    EXPECT_EQ(cat.size(), expect);
    std::set<std::vector<std::uint64_t>> ours;
    for (std::size_t i = 0; i < cat.size(); ++i) ours.insert(encode_all(raw, cat.elements(i)));
    EXPECT_EQ(ours.size(), cat.size());
    EXPECT_EQ(ours, raw.all_subgroups());
  }
}

TEST(Catalog, IndexingAndThreshold) {
  const auto fp = field_ptr(3, 2);
  const auto a = enumerate_all(fp);
  const auto b = enumerate_all(fp, kDefaultSizeCap, 0);
  EXPECT_TRUE(a.has_containment_matrix());
  EXPECT_FALSE(b.has_containment_matrix());
  ASSERT_EQ(a.size(), 48u);
  EXPECT_EQ(a[a.trivial_index()], trivial_subgroup(*fp));
  EXPECT_EQ(a[a.full_index()], full_group(*fp));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.index_of(a[i]), i);
    for (std::size_t j = 0; j < a.size(); ++j) ASSERT_EQ(a.contains(i, j), b.contains(i, j));
  }
  std::size_t total = 0;
  for (const auto& [order, idx] : a.index_by_order()) {
    for (auto i : idx) EXPECT_EQ(a[i].order(), order);
    total += idx.size();
  }
  EXPECT_EQ(total, a.size());
  EXPECT_THROW(enumerate_all(fp, 8), Error);
}

TEST(ImmediateSupergroups, TrivialInF4) {
  GaloisField f(2, 2);
  const auto ups = immediate_supergroups(f, trivial_subgroup(f));
  EXPECT_EQ(ups.size(), 7u);
  for (const auto& u : ups) EXPECT_TRUE(u.order() == 2 || u.order() == 3);
}

TEST(ImmediateSupergroups, MatchesMinimalStrictSupergroups) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {7, 1}, {2, 3}, {3, 2}, {2, 4}}) {
    const auto fp = field_ptr(p, n);
    const auto cat = enumerate_all(fp);
    for (std::size_t i = 0; i + 1 < cat.size(); ++i) {
      std::vector<Subgroup> minimal;
      for (std::size_t j = 0; j < cat.size(); ++j) {
        if (j == i || !cat.contains(j, i)) continue;
        bool is_min = true;
        for (std::size_t k = 0; k < cat.size(); ++k)
          if (k != i && k != j && cat.contains(k, i) && cat.contains(j, k)) is_min = false;
        if (is_min) minimal.push_back(cat[j]);
      }
      std::sort(minimal.begin(), minimal.end());
      ASSERT_EQ(immediate_supergroups(*fp, cat[i]), minimal) << "q=" << fp->q() << " i=" << i;
    }
  }
}

TEST(ImmediateSupergroups, FullGroupHasNone) {
  GaloisField f(5, 1);
  try {
    immediate_supergroups(f, full_group(f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FullGroup);
  }
}
