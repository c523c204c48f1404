#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "punip/basis.hpp"
#include "punip/error.hpp"
#include "punip/linalg.hpp"
#include "punip/ratfunc.hpp"

using namespace punip;

namespace {

RatFunc v(const Field& f, const char* name) { return RatFunc::var(f, std::string(name)); }

TEST(Field, RejectsBadCharacteristic) {
  EXPECT_THROW(make_field(4, {"l"}), DomainError);
  EXPECT_THROW(make_field(17, {"l"}), DomainError);
  EXPECT_THROW(make_field(2, {"l", "l"}), DomainError);
  EXPECT_EQ(make_field(3, {"l", "m"})->header(), "GF(3)(l,m)");
}

TEST(RatFunc, CanonicalForm) {
  Field f = make_field(2, {"l"});
  RatFunc l = v(f, "l"), one(f, 1);
  EXPECT_EQ(l / (one + l) + one / (one + l), one);
  EXPECT_EQ(l * l, l.pow(2));
  EXPECT_THROW(one / RatFunc(f), DivisionByZero);
  // Equal values have equal representations.
  EXPECT_EQ((l * l + one) / (l + one), l + one);
}

TEST(RatFunc, NegativeCharacteristicThree) {
  Field f = make_field(3, {"l"});
  RatFunc l = v(f, "l");
  EXPECT_EQ(l + l + l, RatFunc(f));
  EXPECT_EQ(-l, l + l);
  EXPECT_EQ(RatFunc(f, 2) * RatFunc(f, 2), RatFunc(f, 1));
}

TEST(RatFunc, OverflowIsReported) {
  Field f = make_field(2, {"l"}, 16);
  RatFunc l = v(f, "l");
  EXPECT_THROW(l.pow(40), OverflowError);
}

TEST(MPoly, GcdOfProducts) {
  std::mt19937 rng(23);
  for (int p : {2, 3, 5}) {
    for (int k = 0; k < 12; ++k) {
      MPoly a = oracle::random_poly(p, 3, 3, rng), b = oracle::random_poly(p, 3, 3, rng);
      MPoly c = oracle::random_poly(p, 3, 2, rng);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      MPoly g = gcd(a * c, b * c);
      EXPECT_TRUE(g.divide_exact(c)) << "p=" << p;
      EXPECT_TRUE((a * c).divide_exact(g));
      EXPECT_TRUE((b * c).divide_exact(g));
      EXPECT_EQ(g, g.monic());
      // Cofactors share nothing more.
      MPoly ca = *(a * c).divide_exact(g), cb = *(b * c).divide_exact(g);
      EXPECT_TRUE(gcd(ca, cb).is_one());
      EXPECT_EQ(gcd(a.frobenius(1), b.frobenius(1)), gcd(a, b).frobenius(1));
    }
  }
}

TEST(Frobenius, Power) {
  Field f2 = make_field(2, {"l", "m"});
  EXPECT_EQ(frobenius_power(v(f2, "l") + v(f2, "m"), 1), v(f2, "l").pow(2) + v(f2, "m").pow(2));
  EXPECT_EQ(frobenius_power(RatFunc(f2, 1), 3), RatFunc(f2, 1));
  Field f3 = make_field(3, {"l", "m"});
  EXPECT_EQ(frobenius_power(v(f3, "l") / v(f3, "m"), 1), v(f3, "l").pow(3) / v(f3, "m").pow(3));
}

TEST(Frobenius, DecomposeSmallCases) {
  Field f = make_field(2, {"l", "m"});
  RatFunc l = v(f, "l"), m = v(f, "m"), one(f, 1);
  FrobDecomp d = frobenius_decompose(l + l * l * m);
  ASSERT_EQ(d.parts.size(), 2u);
  EXPECT_EQ(d.parts.at({1, 0}), one);
  EXPECT_EQ(d.parts.at({0, 1}), l);

  FrobDecomp sq = frobenius_decompose(l * l);
  ASSERT_EQ(sq.parts.size(), 1u);
  EXPECT_EQ(sq.parts.at({0, 0}), l);

  RatFunc inv = one / (one + l);
  FrobDecomp di = frobenius_decompose(inv);
  EXPECT_EQ(di.parts.at({0, 0}), inv);
  EXPECT_EQ(di.parts.at({1, 0}), inv);
  EXPECT_EQ(di.reconstruct(f), inv);
}

TEST(Frobenius, MatchesExponentSplittingOracle) {
  std::mt19937 rng(11);
  for (int p : {2, 3, 5}) {
    Field f = make_field(p, {"l", "m"});
    for (int k = 0; k < 40; ++k) {
      RatFunc x = oracle::random_ratfunc(f, 4, rng);
      FrobDecomp d = frobenius_decompose(x);
      auto want = oracle::frobenius_parts(x);
      // Oracle parts may include zeros from cancellation; compare nonzero ones.
      std::map<std::vector<int>, RatFunc> nonzero;
      for (const auto& [e, g] : want)
        if (!g.is_zero()) nonzero.emplace(e, g);
      EXPECT_EQ(d.parts, nonzero) << x.to_string();
    }
  }
}

TEST(Frobenius, RoundTripHigherLevel) {
  std::mt19937 rng(5);
  Field f = make_field(2, {"l", "m"}, 128);
  for (int k = 0; k < 20; ++k) {
    RatFunc x = oracle::random_ratfunc(f, 5, rng);
    EXPECT_EQ(frobenius_decompose(x, 2).reconstruct(f), x);
  }
}

TEST(Frobenius, CrossMultipliedCheck) {
  std::mt19937 rng(19);
  Field f = make_field(3, {"l", "m", "g"}, 256);
  for (int k = 0; k < 30; ++k) {
    RatFunc x = oracle::random_ratfunc(f, 5, rng);
    FrobDecomp d = frobenius_decompose(x);
    EXPECT_TRUE(d.reconstructs(x)) << x.to_string();
    EXPECT_FALSE(d.reconstructs(x + RatFunc(f, 1))) << x.to_string();
    FrobDecomp bad = d;
    auto& first = bad.parts.begin()->second;
    first = first + RatFunc::var(f, 0);
    EXPECT_FALSE(bad.reconstructs(x)) << x.to_string();
  }
}

TEST(Frobenius, ImageMembership) {
  Field f = make_field(3, {"l"});
  RatFunc l = v(f, "l");
  EXPECT_TRUE(in_frobenius_image(l.pow(3) + RatFunc(f, 1)));
  EXPECT_FALSE(in_frobenius_image(l));
  EXPECT_TRUE(in_frobenius_image(l.pow(9), 2));
  EXPECT_FALSE(in_frobenius_image(l.pow(3), 2));
}

TEST(PIndependence, SpecCases) {
  Field f = make_field(2, {"l", "m"});
  RatFunc l = v(f, "l"), m = v(f, "m");
  EXPECT_TRUE(p_independent({l, m}).independent);
  EXPECT_FALSE(p_independent({l, l * l}).independent);
  IndependenceResult r = p_independent({l, l + m * m});
  EXPECT_FALSE(r.independent);
  EXPECT_EQ(oracle::kp_degree_log({l, l + m * m}), 1u);
}

TEST(PIndependence, DependentRelationIsGenuine) {
  Field f = make_field(3, {"l", "m"});
  RatFunc l = v(f, "l"), m = v(f, "m");
  IndependenceResult r = p_independent({l * m, l.pow(2) * m.pow(2)});
  ASSERT_FALSE(r.independent);
  ASSERT_EQ(r.relation.size(), r.products.size());
  RatFunc sum(f);
  for (std::size_t k = 0; k < r.products.size(); ++k) {
    RatFunc prod(f, 1);
    prod = prod * (l * m).pow(r.products[k][0]) * (l.pow(2) * m.pow(2)).pow(r.products[k][1]);
    EXPECT_TRUE(in_frobenius_image(r.relation[k]));
    sum = sum + r.relation[k] * prod;
  }
  EXPECT_TRUE(sum.is_zero());
}

TEST(KpModule, Membership) {
  Field f = make_field(2, {"l", "m"});
  RatFunc l = v(f, "l"), m = v(f, "m"), one(f, 1);
  auto a = kp_module_membership(l, {one, l, m, l * m});
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (std::vector<RatFunc>{RatFunc(f), one, RatFunc(f), RatFunc(f)}));
  auto b = kp_module_membership(m * m, {one, l});
  ASSERT_TRUE(b);
  EXPECT_EQ((*b)[0], m);
  EXPECT_TRUE((*b)[1].is_zero());
  EXPECT_FALSE(kp_module_membership(m, {one, l}));
}

TEST(FpSystem, SmallSystems) {
  FpSystem id(2, 2);
  id.add_dense_row({1, 0}, 1);
  id.add_dense_row({0, 1}, 0);
  auto s = id.solve();
  ASSERT_TRUE(s.consistent());
  EXPECT_EQ(*s.particular, (FpVector{1, 0}));
  EXPECT_EQ(s.dim(), 0u);

  FpSystem zero(3, 3);
  zero.add_dense_row({0, 0, 0}, 0);
  EXPECT_EQ(zero.solve().dim(), 3u);

  FpSystem tri(2, 3);
  tri.add_dense_row({1, 1, 0}, 1);
  tri.add_dense_row({0, 1, 1}, 1);
  tri.add_dense_row({1, 0, 1}, 0);
  auto t = tri.solve();
  ASSERT_TRUE(t.consistent());
  EXPECT_EQ(t.dim(), 1u);
  // Enumerate all 8 assignments.
  int count = 0;
  for (int x = 0; x < 8; ++x) {
    FpVector a{static_cast<std::uint8_t>(x & 1), static_cast<std::uint8_t>((x >> 1) & 1),
               static_cast<std::uint8_t>((x >> 2) & 1)};
    bool sol = ((a[0] + a[1]) % 2 == 1) && ((a[1] + a[2]) % 2 == 1) && ((a[0] + a[2]) % 2 == 0);
    EXPECT_EQ(sol, t.contains(a));
    count += sol;
  }
  EXPECT_EQ(count, 2);

  FpSystem bad(3, 1);
  bad.add_dense_row({1}, 1);
  bad.add_dense_row({2}, 1);
  EXPECT_FALSE(bad.solve().consistent());
}

TEST(FpSystem, RandomAgainstEnumeration) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    int p = trial % 2 ? 3 : 2;
    std::size_t n = 4;
    FpSystem sys(p, n);
    std::vector<std::vector<int>> rows;
    std::vector<int> rhs;
    for (int r = 0; r < 3; ++r) {
      std::vector<int> row(n);
      for (auto& x : row) x = static_cast<int>(rng() % static_cast<unsigned>(p));
      int b = static_cast<int>(rng() % static_cast<unsigned>(p));
      sys.add_dense_row(row, b);
      rows.push_back(row);
      rhs.push_back(b);
    }
    auto s = sys.solve();
    int total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    int sols = 0;
    for (int code = 0; code < total; ++code) {
      FpVector a(n);
      int c = code;
      for (auto& x : a) {
        x = static_cast<std::uint8_t>(c % p);
        c /= p;
      }
      bool ok = true;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        int acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += rows[r][i] * a[i];
        if (acc % p != rhs[r]) ok = false;
      }
      EXPECT_EQ(ok, s.contains(a));
      sols += ok;
    }
    int expect = 0;
    if (s.consistent()) {
      expect = 1;
      for (std::size_t i = 0; i < s.dim(); ++i) expect *= p;
    }
    EXPECT_EQ(sols, expect);
  }
}

TEST(MonomialBasis, Expansion) {
  Field f = make_field(2, {"l", "m"});
  RatFunc l = v(f, "l"), m = v(f, "m");
  MonomialBasis b = MonomialBasis::of(f, {Monomial(), Monomial::var(0), Monomial::var(1)});
  auto e = expand_in_basis(l + m, b);
  ASSERT_TRUE(e);
  EXPECT_EQ(*e, (FpVector{0, 1, 1}));
  MonomialBasis b2 = MonomialBasis::of(f, {Monomial(), Monomial::var(0)});
  EXPECT_FALSE(expand_in_basis(l * l, b2));
  EXPECT_EQ(*expand_in_basis(RatFunc(f), b2), (FpVector{0, 0}));
  EXPECT_EQ(MonomialBasis::total_degree(f, 2).size(), 6u);
}

TEST(MonomialBasis, DenominatorRoundTrip) {
  Field f = make_field(3, {"l"});
  RatFunc l = v(f, "l"), one(f, 1);
  MonomialBasis b = MonomialBasis::total_degree(f, 2, (one + l).num());
  FpVector c{1, 2, 1};
  RatFunc x = b.combine(c);
  EXPECT_EQ(x, (one + l.scaled(2) + l * l) / (one + l));
  EXPECT_EQ(*expand_in_basis(x, b), c);
}

}  // namespace
