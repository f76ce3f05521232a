#include <gtest/gtest.h>

#include <random>

#include "wsg/error.hpp"
#include "wsg/groebner.hpp"

using namespace wsg;

namespace {

struct XYZ {
  TablePtr t = make_table({.type = std::nullopt, .coefficients = false, .xy = true, .points = 0, .z = true});
  SparsePoly X = SparsePoly::variable(t, t->x());
  SparsePoly Y = SparsePoly::variable(t, t->y());
  SparsePoly one = SparsePoly::constant(t, 1);
};

struct XY {
  TablePtr t = make_table({.type = std::nullopt, .coefficients = false});
  SparsePoly X = SparsePoly::variable(t, t->x());
  SparsePoly Y = SparsePoly::variable(t, t->y());
  SparsePoly one = SparsePoly::constant(t, 1);
};

}  // namespace

TEST(Groebner, SmallBases) {
  XY r;
  auto order = MonomialOrder::grevlex(2);
  auto gb = groebner_basis({r.X * r.X, r.X * r.Y}, order);
  ASSERT_EQ(gb.polys().size(), 2u);
  EXPECT_EQ(gb.polys()[0], r.X * r.Y);
  EXPECT_EQ(gb.polys()[1], r.X * r.X);

  gb = groebner_basis({r.X, r.Y}, order);
  EXPECT_EQ(gb.polys().size(), 2u);
  EXPECT_TRUE(groebner_basis({r.X - r.one, r.X}, order).is_unit());
}

TEST(Groebner, BasisProperties) {
  XY r;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 15; ++trial) {
    auto rnd = [&]() {
      SparsePoly f(r.t);
      for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) f += r.X.pow(i) * r.Y.pow(j) * Rational(coef(rng));
      }
      return f;
    };
    const std::vector<SparsePoly> gens{rnd(), rnd()};
    for (const auto& order : {MonomialOrder::grevlex(2), MonomialOrder::lex(2)}) {
      const auto gb = groebner_basis(gens, order);
      for (const auto& g : gens) EXPECT_TRUE(gb.normal_form(g).is_zero());
      for (std::size_t i = 0; i < gb.polys().size(); ++i) {
        for (std::size_t j = i + 1; j < gb.polys().size(); ++j) {
          EXPECT_TRUE(gb.normal_form(s_polynomial(gb.polys()[i], gb.polys()[j], order)).is_zero());
        }
      }
      const auto f = rnd() * rnd();
      const auto g = rnd();
      const auto nf = gb.normal_form(f);
      EXPECT_EQ(gb.normal_form(nf), nf);
      EXPECT_EQ(gb.normal_form(f + g), gb.normal_form(nf + gb.normal_form(g)));
    }
  }
}

TEST(Membership, Ideal) {
  XY r;
  EXPECT_TRUE(ideal_member(r.X * r.X, Ideal(r.t, {r.X})));
  EXPECT_TRUE(ideal_member(r.one, Ideal(r.t, {r.X - r.one, r.X})));
  EXPECT_FALSE(ideal_member(r.Y, Ideal(r.t, {r.X})));
}

TEST(Membership, Radical) {
  XY r;
  const Ideal x2(r.t, {r.X * r.X});
  EXPECT_TRUE(radical_member(r.X, x2));
  EXPECT_FALSE(radical_member(r.Y, x2));
  const Ideal sq(r.t, {r.X * r.X, r.Y * r.Y});
  EXPECT_TRUE(radical_member(r.X + r.Y, sq));
  EXPECT_FALSE(ideal_member(r.X + r.Y, sq));
  EXPECT_FALSE(radical_member(r.X + r.one, sq));

  XYZ s;
  const Ideal cusp(s.t, {s.Y * s.Y - s.X.pow(3), s.X * s.X, s.Y});
  EXPECT_TRUE(radical_member(s.X, cusp));
  EXPECT_FALSE(radical_member(s.X - s.one, cusp));
  const auto order = MonomialOrder::blocks({{0, 1}, {2}});
  EXPECT_TRUE(radical_member_product({s.X - s.one, s.Y}, cusp, order));
  EXPECT_FALSE(radical_member_product({s.X - s.one, s.Y + s.one}, cusp, order));
}

TEST(Membership, RadicalAgreesWithIdeal) {
  XY r;
  const Ideal i(r.t, {r.X.pow(2) - r.Y, r.Y.pow(3)});
  for (const auto& f : {r.X.pow(6), r.Y * r.X, r.X.pow(2) * r.Y.pow(2)}) {
    if (ideal_member(f, i)) EXPECT_TRUE(radical_member(f, i));
  }
  EXPECT_TRUE(radical_member(r.X, i));
}

TEST(Quotient, Dimensions) {
  XY r;
  auto info = quotient_dimension(Ideal(r.t, {r.X, r.Y}));
  EXPECT_TRUE(info.finite_dimensional);
  EXPECT_EQ(info.dimension, 1u);
  ASSERT_EQ(info.standard_monomials.size(), 1u);
  EXPECT_TRUE(info.standard_monomials[0].is_one());

  const auto nodal = r.Y * r.Y - r.X.pow(3) - r.X * r.X;
  info = quotient_dimension(Ideal(r.t, {nodal, r.X * r.X * Rational(-3) - r.X * Rational(2), r.Y * Rational(2)}));
  EXPECT_EQ(info.dimension, 1u);

  const auto cusp = r.Y * r.Y - r.X.pow(3);
  info = quotient_dimension(Ideal(r.t, {cusp, r.X * r.X * Rational(-3), r.Y * Rational(2)}));
  EXPECT_EQ(info.dimension, 2u);

  EXPECT_FALSE(quotient_dimension(Ideal(r.t, {r.X})).finite_dimensional);
  EXPECT_EQ(quotient_dimension(Ideal(r.t, {r.one})).dimension, 0u);
}

TEST(Groebner, BudgetExhaustion) {
  XY r;
  GroebnerBudget tiny;
  tiny.max_pairs = 1;
  const std::vector<SparsePoly> gens{r.X.pow(3) - r.Y * r.Y - r.one, r.X * r.Y.pow(2) - r.X - r.Y.pow(3), r.Y.pow(4) - r.X};
  try {
    groebner_basis(gens, MonomialOrder::lex(2), tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceBudgetExceeded);
  }
}
