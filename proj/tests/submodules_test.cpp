#include <random>
#include <set>

#include <gtest/gtest.h>

#include "aglmu/submodules.hpp"
#include "test_support.hpp"

using namespace aglmu;
using aglmu::testing::gaussian_binomial;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(PofD, Examples) {
  EXPECT_EQ(p_of_d(2, 3), 4u);
  EXPECT_EQ(p_of_d(3, 2), 3u);
  EXPECT_EQ(p_of_d(2, 5), 16u);
  EXPECT_EQ(p_of_d(2, 7), 8u);
  EXPECT_EQ(p_of_d(5, 1), 1u);
  EXPECT_EQ(coefficient_field_order(5, 1), 5u);
  EXPECT_EQ(kind_of([] { p_of_d(2, 4); }), ErrorKind::CharDividesD);
  EXPECT_EQ(kind_of([] { p_of_d(3, 6); }), ErrorKind::CharDividesD);
}

TEST(PofD, SmallestPowerCongruentToOne) {
  for (u64 p : {2, 3, 5, 7})
    for (u64 d = 2; d < (p == 2 ? 60u : 20u); ++d) {
      if (d % p == 0) continue;
      u64 x = p;
      while (x % d != 1) x *= p;
      EXPECT_EQ(p_of_d(p, d), x) << p << " " << d;
    }
}

TEST(Submodule, SpanIsCanonical) {
  GaloisField f(3, 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> pick(0, f.q() - 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<FieldElement> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(f.from_index(pick(rng)));
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(f.add(gens[0], gens[1]));
    const auto a = Submodule::span(f, gens), b = Submodule::span(f, shuffled);
    ASSERT_EQ(a, b);
    // Additive closure of the generators, by brute force.
    std::set<FieldElement> closure{f.zero()};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& x : std::vector<FieldElement>(closure.begin(), closure.end()))
        for (const auto& g : gens) grew |= closure.insert(f.add(x, g)).second;
    }
    ASSERT_EQ(std::vector<FieldElement>(closure.begin(), closure.end()), a.elements());
  }
}

TEST(Submodule, ReduceGivesLexSmallestCosetMember) {
  GaloisField f(2, 4);
  for (const auto& h : enumerate_submodules(f, SubfieldTag{2, 1})) {
    const auto hs = h.elements();
    for (const auto& v : f.all_elements()) {
      FieldElement best = v;
      for (const auto& x : hs) best = std::min(best, f.add(v, x));
      ASSERT_EQ(h.reduce(v), best);
    }
  }
}

TEST(Submodule, EnumerationCounts) {
  GaloisField f4(2, 2);
  EXPECT_EQ(enumerate_submodules(f4, SubfieldTag{2, 1}).size(), 5u);
  GaloisField f16(2, 4);
  EXPECT_EQ(enumerate_submodules(f16, SubfieldTag{4, 2}).size(), 7u);
  EXPECT_EQ(enumerate_submodules(f16, SubfieldTag{16, 4}).size(), 2u);
  EXPECT_EQ(enumerate_submodules(f16, SubfieldTag{2, 1}).size(), 67u);
}

TEST(Submodule, EnumerationMatchesGaussianBinomials) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {2, 6}, {3, 4}}) {
    GaloisField f(p, n);
    for (u32 m = 1; m <= n; ++m) {
      if (n % m) continue;
      const u64 r = *nt::checked_pow(p, m);
      const auto subs = enumerate_submodules(f, SubfieldTag{r, m});
      u64 expect = 0;
      for (unsigned j = 0; j <= n / m; ++j) expect += gaussian_binomial(static_cast<unsigned>(n / m), j, r);
      EXPECT_EQ(subs.size(), expect) << "q=" << f.q() << " r=" << r;
      EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
      for (const auto& s : subs) EXPECT_TRUE(is_module_over(f, s, SubfieldTag{r, m}));
    }
  }
}

TEST(Submodule, ModuleTests) {
  GaloisField f16(2, 4);
  const auto f4 = f16.subfield_elements(2);
  const auto sub = Submodule::span(f16, f4);
  EXPECT_TRUE(is_module_over(f16, sub, SubfieldTag{4, 2}));
  EXPECT_FALSE(is_module_over(f16, sub, SubfieldTag{16, 4}));
  EXPECT_EQ(stabilizer_field(f16, sub).r, 4u);
  const std::vector<FieldElement> one{f16.one()};
  const auto prime = Submodule::span(f16, one);
  EXPECT_FALSE(is_module_over(f16, prime, SubfieldTag{4, 2}));
  EXPECT_EQ(stabilizer_field(f16, prime).r, 2u);
  EXPECT_EQ(stabilizer_field(f16, Submodule::whole(f16)).r, 16u);
  EXPECT_EQ(stabilizer_field(f16, Submodule::zero(f16)).r, 16u);
  EXPECT_EQ(r_span(f16, one, SubfieldTag{4, 2}), sub);
}

TEST(Submodule, StabilizerByBruteForce) {
  GaloisField f(2, 6);
  for (const auto& h : enumerate_submodules(f, SubfieldTag{2, 1})) {
    if (h.dim_p() > 3) continue;
    u64 count = 0;
    for (const auto& x : f.all_elements()) {
      bool ok = true;
      for (const auto& y : h.basis()) ok = ok && h.contains(f.mul(x, y));
      count += ok;
    }
    ASSERT_EQ(stabilizer_field(f, h).r, count);
  }
}

TEST(Submodule, SubfieldTag) {
  GaloisField f(3, 4);
  EXPECT_EQ(subfield_tag(f, 9), (SubfieldTag{9, 2}));
  EXPECT_EQ(kind_of([&] { subfield_tag(f, 27); }), ErrorKind::NotDivisor);
  EXPECT_EQ(kind_of([&] { subfield_tag(f, 4); }), ErrorKind::NotDivisor);
}

TEST(QuotientDim, ExamplesAndErrors) {
  GaloisField f16(2, 4);
  const SubfieldTag r4{4, 2};
  const auto zero = Submodule::zero(f16), whole = Submodule::whole(f16);
  EXPECT_EQ(quotient_dim(f16, zero, whole, r4), 2u);
  EXPECT_EQ(quotient_dim(f16, zero, whole, SubfieldTag{2, 1}), 4u);
  const auto f4 = Submodule::span(f16, f16.subfield_elements(2));
  EXPECT_EQ(quotient_dim(f16, f4, whole, r4), 1u);
  EXPECT_EQ(kind_of([&] { quotient_dim(f16, whole, f4, r4); }), ErrorKind::NotContained);
  const std::vector<FieldElement> one{f16.one()};
  const auto prime = Submodule::span(f16, one);
  EXPECT_EQ(kind_of([&] { quotient_dim(f16, prime, whole, r4); }), ErrorKind::NotModule);
}

TEST(MuSubspace, Values) {
  EXPECT_EQ(mu_subspace(0, 7), 1);
  EXPECT_EQ(mu_subspace(1, 7), -1);
  EXPECT_EQ(mu_subspace(2, 4), 4);
  EXPECT_EQ(mu_subspace(3, 2), -8);
  EXPECT_EQ(mu_subspace(4, 3), 729);
}

TEST(SubfieldDescent, SpanningSubspacesOfF4) {
  // F_2-subspaces of F_4 spanning F_4 over F_4: three lines (-1 each) and the plane (+2).
  GaloisField f4(2, 2);
  EXPECT_TRUE(subfield_descent_holds(f4, SubfieldTag{2, 1}, SubfieldTag{4, 2}, Submodule::whole(f4)));
  Integer lhs = 0;
  for (const auto& l : enumerate_submodules(f4, SubfieldTag{2, 1}))
    if (l.dim_p() > 0) lhs += mu_subspace(l.dim_p(), 2);
  EXPECT_EQ(lhs, mu_subspace(1, 4));
}

TEST(SubfieldDescent, AllSubmodules) {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{2, 4}, {3, 2}, {3, 3}}) {
    GaloisField f(p, n);
    for (u32 mq = 1; mq <= n; ++mq) {
      if (n % mq) continue;
      const SubfieldTag qp{*nt::checked_pow(p, mq), mq};
      for (u32 mr = 1; mr <= mq; ++mr) {
        if (mq % mr) continue;
        const SubfieldTag r{*nt::checked_pow(p, mr), mr};
        for (const auto& v : enumerate_submodules(f, qp)) EXPECT_TRUE(subfield_descent_holds(f, r, qp, v));
      }
    }
  }
}

TEST(SubfieldDescent, Errors) {
  GaloisField f(2, 6);
  EXPECT_EQ(kind_of([&] { subfield_descent_holds(f, SubfieldTag{4, 2}, SubfieldTag{8, 3}, Submodule::zero(f)); }),
            ErrorKind::NotDivisor);
  const std::vector<FieldElement> one{f.one()};
  EXPECT_EQ(kind_of([&] { subfield_descent_holds(f, SubfieldTag{2, 1}, SubfieldTag{8, 3}, Submodule::span(f, one)); }),
            ErrorKind::NotModule);
}
