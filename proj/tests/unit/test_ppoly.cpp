#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "punip/basis.hpp"
#include "punip/error.hpp"
#include "punip/ppoly.hpp"

using namespace punip;

namespace {

struct Ctx {
  Field f;
  RatFunc l, m;
  explicit Ctx(int p, int max_degree = 64)
      : f(make_field(p, {"l", "m"}, max_degree)), l(RatFunc::var(f, 0)), m(RatFunc::var(f, 1)) {}
  PPoly x(std::size_t arity, std::size_t i, int e = 0) const { return PPoly::var(f, arity, i, e); }
  RatFunc c(long long v) const { return RatFunc(f, v); }
};

TEST(PPoly, ComposeFrobeniusOfSum) {
  Ctx c(2);
  PPoly F = c.x(1, 0, 1);
  PPoly sub = c.x(2, 0) + c.x(2, 1).scaled(c.l);
  PPoly got = ppoly_compose(F, {sub});
  EXPECT_EQ(got, c.x(2, 0, 1) + c.x(2, 1, 1).scaled(c.l * c.l));
}

TEST(PPoly, ComposeIdentityAndRenaming) {
  Ctx c(2);
  PPoly sub = c.x(3, 2, 1).scaled(c.m) + c.x(3, 0);
  EXPECT_EQ(ppoly_compose(c.x(1, 0), {sub}), sub);
  // F = -X1 + X0^2 + m X1^2 composed with [S, S0].
  PPoly F = -c.x(2, 1) + c.x(2, 0, 1) + c.x(2, 1, 1).scaled(c.m);
  PPoly got = ppoly_compose(F, {c.x(2, 0), c.x(2, 1)});
  EXPECT_EQ(got, F);
  PPoly swapped = ppoly_compose(F, {c.x(2, 1), c.x(2, 0)});
  EXPECT_EQ(swapped, -c.x(2, 0) + c.x(2, 1, 1) + c.x(2, 0, 1).scaled(c.m));
}

TEST(PPoly, CompositionIsAssociativeAndAdditive) {
  std::mt19937 rng(17);
  for (int p : {2, 3}) {
    Ctx c(p, 256);
    auto random_pp = [&](std::size_t arity) {
      PPoly r(c.f, arity);
      for (int k = 0; k < 3; ++k) {
        std::size_t i = rng() % arity;
        int e = static_cast<int>(rng() % 2);
        r.add_term(i, e, RatFunc::poly(c.f, oracle::random_poly(p, 2, 1, rng, 2)));
      }
      return r;
    };
    for (int trial = 0; trial < 10; ++trial) {
      PPoly F = random_pp(2);
      std::vector<PPoly> g{random_pp(2), random_pp(2)};
      std::vector<PPoly> h{random_pp(1), random_pp(1)};
      std::vector<PPoly> gh{ppoly_compose(g[0], h), ppoly_compose(g[1], h)};
      EXPECT_EQ(ppoly_compose(ppoly_compose(F, g), h), ppoly_compose(F, gh));
      // Values are additive: F(a + b) = F(a) + F(b) at field points.
      std::vector<RatFunc> a{c.l, c.m + c.c(1)}, b{c.m * c.l, c.c(p - 1)};
      std::vector<RatFunc> ab{a[0] + b[0], a[1] + b[1]};
      EXPECT_EQ(F.eval(ab), F.eval(a) + F.eval(b));
    }
  }
}

TEST(PPoly, PrincipalPart) {
  Ctx c(2);
  // -S + l S^2 + S0^2
  PPoly v1 = -c.x(2, 0) + c.x(2, 0, 1).scaled(c.l) + c.x(2, 1, 1);
  PrincipalPart pp = principal_part(v1);
  ASSERT_EQ(pp.leading.size(), 2u);
  EXPECT_EQ(pp.leading.at(0), std::make_pair(1, c.l));
  EXPECT_EQ(pp.leading.at(1), std::make_pair(1, c.c(1)));
  EXPECT_EQ(principal_polynomial(c.x(1, 0)), c.x(1, 0));
  // U_ext relation at p = 2: -X1 + m Y^2 + X0^2 + l X1^2 in (Y, X0, X1).
  PPoly u = -c.x(3, 2) + c.x(3, 0, 1).scaled(c.m) + c.x(3, 1, 1) + c.x(3, 2, 1).scaled(c.l);
  PrincipalPart up = principal_part(u);
  EXPECT_EQ(up.leading.at(0), std::make_pair(1, c.m));
  EXPECT_EQ(up.leading.at(1), std::make_pair(1, c.c(1)));
  EXPECT_EQ(up.leading.at(2), std::make_pair(1, c.l));
}

TEST(PPoly, ReducedDiagonal) {
  Ctx c(2);
  PPoly v1 = -c.x(2, 0) + c.x(2, 0, 1).scaled(c.l) + c.x(2, 1, 1);
  ReducedVerdict r = reduced_diagonal(v1);
  EXPECT_TRUE(r.reduced);
  EXPECT_EQ(r.exactness, Exactness::Exact);

  PPoly split = c.x(2, 0, 1) + c.x(2, 1, 1).scaled(c.l * c.l);
  ReducedVerdict s = reduced_diagonal(split);
  ASSERT_FALSE(s.reduced);
  ASSERT_EQ(s.witness.size(), 2u);
  EXPECT_TRUE(principal_polynomial(split).eval(s.witness).is_zero());
  EXPECT_FALSE(s.witness[0].is_zero() && s.witness[1].is_zero());
}

TEST(PPoly, ReducedDiagonalBiadditiveRelation) {
  for (int p : {2, 3}) {
    Ctx c(p);
    std::size_t n = static_cast<std::size_t>(p * p);
    PPoly w(c.f, n);
    w.add_term(n - 1, 0, c.c(-1));
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        w.add_term(static_cast<std::size_t>(i * p + j), 1, c.l.pow(i) * c.m.pow(j));
    EXPECT_TRUE(reduced_diagonal(w).reduced) << "p=" << p;
  }
}

TEST(PPoly, ReducedDiagonalNeedsEqualPowers) {
  Ctx c(2);
  PPoly mixed = c.x(2, 0, 2) + c.x(2, 1, 1);
  EXPECT_THROW(reduced_diagonal(mixed), DomainError);
}

TEST(PPoly, ReducedWithinTruncation) {
  Ctx c(2);
  PPoly u = -c.x(3, 2) + c.x(3, 0, 1).scaled(c.m) + c.x(3, 1, 1) + c.x(3, 2, 1).scaled(c.l);
  ReducedVerdict r = reduced_within(u, MonomialBasis::total_degree(c.f, 3));
  EXPECT_TRUE(r.reduced);
  EXPECT_EQ(r.exactness, Exactness::WithinTruncation);

  PPoly split = c.x(2, 0, 1) + c.x(2, 1, 1);
  ReducedVerdict s = reduced_within(split, MonomialBasis::total_degree(c.f, 0));
  ASSERT_FALSE(s.reduced);
  EXPECT_EQ(s.witness, (std::vector<RatFunc>{c.c(1), c.c(1)}));

  PPoly v1 = -c.x(2, 0) + c.x(2, 0, 1).scaled(c.l) + c.x(2, 1, 1);
  EXPECT_TRUE(reduced_within(v1, MonomialBasis::total_degree(c.f, 0)).reduced);
}

TEST(PPoly, UniversalWithin) {
  Field f = make_field(2, {"l"});
  RatFunc l = RatFunc::var(f, 0);
  auto B = [&](std::vector<int> degs) {
    std::vector<Monomial> ms;
    for (int d : degs) ms.push_back(Monomial::var(0, static_cast<unsigned>(d)));
    return MonomialBasis::of(f, ms);
  };
  MonomialBasis small = B({0, 1});
  EXPECT_TRUE(universal_within(PPoly::var(f, 1, 0), small, small).covered);
  UniversalVerdict frob = universal_within(PPoly::var(f, 1, 0, 1), small, B({1}));
  EXPECT_FALSE(frob.covered);
  EXPECT_EQ(frob.missing, (std::vector<std::size_t>{0}));
  PPoly g = PPoly::var(f, 2, 0) + PPoly::var(f, 2, 1, 1).scaled(l);
  // a + l b^2 with a, b in span{1, l} reaches 1, l, l^3 but never l^2.
  UniversalVerdict u = universal_within(g, small, B({0, 1, 2, 3}));
  EXPECT_FALSE(u.covered);
  EXPECT_EQ(u.missing, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(universal_within(g, small, B({0, 1, 3})).covered);
}

TEST(GPoly, MultiadditiveCheck) {
  Field f = make_field(2, {"l"});
  auto X = [&](std::size_t i) { return GPoly::var(f, 2, i); };
  EXPECT_TRUE(polymap_multiadditive_check({X(0) * X(1)}, {{0}, {1}}));
  EXPECT_TRUE(polymap_multiadditive_check({X(0) * X(0) * X(1)}, {{0}, {1}}));
  EXPECT_FALSE(polymap_multiadditive_check({X(0) * X(1) + X(0)}, {{0}, {1}}));
  Field f3 = make_field(3, {"l"});
  auto Y = [&](std::size_t i) { return GPoly::var(f3, 2, i); };
  EXPECT_FALSE(polymap_multiadditive_check({Y(0) * Y(0) * Y(1)}, {{0}, {1}}));
}

TEST(GPoly, SubstituteAndConvert) {
  Field f = make_field(3, {"l"});
  RatFunc l = RatFunc::var(f, 0);
  GPoly x = GPoly::var(f, 2, 0), y = GPoly::var(f, 2, 1);
  GPoly g = x.pow(3).scaled(l) + y;
  auto as_pp = g.to_ppoly();
  ASSERT_TRUE(as_pp);
  EXPECT_EQ(*as_pp, PPoly::var(f, 2, 0, 1).scaled(l) + PPoly::var(f, 2, 1));
  EXPECT_FALSE((x * y).to_ppoly());
  EXPECT_EQ(g.substitute({y, x}), y.pow(3).scaled(l) + x);
  EXPECT_EQ(GPoly::from_ppoly(*as_pp), g);
}

}  // namespace
