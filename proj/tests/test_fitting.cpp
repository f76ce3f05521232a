#include <gtest/gtest.h>

#include <random>

#include "wsg/error.hpp"
#include "wsg/fitting.hpp"

using namespace wsg;

namespace {

std::vector<Rational> random_alpha(const TypePQ& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> a;
  for (int i = 0; i < t.n(); ++i) a.push_back(frac(num(rng), den(rng)));
  return a;
}

std::map<std::string, Rational> assignment(const TablePtr& table, const std::vector<Rational>& alpha) {
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < alpha.size(); ++i) out[table->name(i)] = alpha[i];
  return out;
}

// Weights of the A variables of t in canonical order.
std::vector<int> weights(const TypePQ& t) {
  std::vector<int> w;
  for (auto [nu, mu] : coefficient_exponents(t)) w.push_back(t.p() * t.q() - nu * t.p() - mu * t.q());
  return w;
}

const TypePQ t23(2, 3);

}  // namespace

TEST(Basis, OrderAndSize) {
  EXPECT_EQ(basis_b(t23), (std::vector<std::pair<int, int>>{{0, 0}, {1, 0}}));
  const TypePQ t34(3, 4);
  EXPECT_EQ(basis_b(t34), (std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {2, 1}}));
  for (auto [p, q] : {std::pair{3, 5}, {4, 7}, {5, 6}}) {
    const TypePQ t(p, q);
    const auto b = basis_b(t);
    EXPECT_EQ(static_cast<int>(b.size()), t.c());
    for (std::size_t i = 1; i < b.size(); ++i) {
      EXPECT_LT(b[i - 1].first * p + b[i - 1].second * q, b[i].first * p + b[i].second * q);
    }
  }
}

TEST(Reduce, HandExamples) {
  const auto unit = reduce_to_basis(t23, 1, 0);
  EXPECT_TRUE(unit[0].is_zero());
  EXPECT_EQ(unit[1].constant_term(), 1);

  // xi^2 = (1/3)(A10 + 2 A20 xi + A11 eta), eta = -(1/2)(A01 + A11 xi).
  const auto xi2 = reduce_to_basis(t23, 2, 0);
  auto table = xi2[0].table();
  auto A = [&](int nu, int mu) { return SparsePoly::variable(table, table->a(nu, mu)); };
  EXPECT_EQ(xi2[0], A(1, 0) * frac(1, 3) - A(1, 1) * A(0, 1) * frac(1, 6));
  EXPECT_EQ(xi2[1], A(2, 0) * frac(2, 3) - A(1, 1) * A(1, 1) * frac(1, 6));

  const auto eta = reduce_to_basis(t23, 0, 1);
  EXPECT_EQ(eta[0], A(0, 1) * frac(-1, 2));
  EXPECT_EQ(eta[1], A(1, 1) * frac(-1, 2));
}

TEST(Reduce, ZeroCoefficientsKillHighMonomials) {
  const TypePQ t(3, 5);
  BasisReducer<Rational> r(
      t, std::vector<Rational>(static_cast<std::size_t>(t.n()), Rational(0)), [](const Rational& v) { return v; },
      [](const Rational& v) { return v == 0; });
  for (auto [a, b] : {std::pair{4, 0}, {0, 2}, {5, 3}}) {
    for (const auto& v : r.reduce(a, b)) EXPECT_EQ(v, 0);
  }
}

TEST(RelationMatrix, HandExamples) {
  auto m = relation_matrix_at(t23, coefficient_vector(t23, {{{0, 0}, Rational(5)}}));
  EXPECT_EQ(m, (Matrix<Rational>{{5, 0}, {0, 5}}));
  m = relation_matrix_at(t23, coefficient_vector(t23, {{{2, 0}, Rational(-1)}}));
  EXPECT_EQ(m, (Matrix<Rational>{{0, 0}, {frac(2, 9), frac(-4, 27)}}));
  EXPECT_THROW(coefficient_vector(t23, {{{3, 0}, Rational(1)}}), Error);
}

TEST(RelationMatrix, EntryDegrees) {
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}, {2, 5}}) {
    const TypePQ t(p, q);
    const auto gm = generic_relation_matrix(t);
    const auto b = basis_b(t);
    const auto g = WeightedGrading::of(*gm.table);
    for (std::size_t row = 0; row < b.size(); ++row) {
      for (std::size_t col = 0; col < b.size(); ++col) {
        const auto& e = gm.m[row][col];
        if (e.is_zero()) continue;
        const auto w = weighted_degree(e, g);
        EXPECT_TRUE(w.homogeneous);
        EXPECT_EQ(w.degree, p * q + b[col].first * p + b[col].second * q - b[row].first * p - b[row].second * q);
      }
    }
  }
}

TEST(Delta, TwoThreeSymbolic) {
  const auto d = delta(t23);
  EXPECT_FALSE(d.is_zero());
  const auto w = weighted_degree(d, WeightedGrading::of(*d.table()));
  EXPECT_TRUE(w.homogeneous);
  EXPECT_EQ(w.degree, 12);
  auto a = coefficient_vector(t23, {{{0, 0}, Rational(7)}});
  EXPECT_EQ(evaluate(d, assignment(d.table(), a)).constant_term(), 49);
  a = coefficient_vector(t23, {{{2, 0}, Rational(-1)}});
  EXPECT_EQ(evaluate(d, assignment(d.table(), a)).constant_term(), 0);
  EXPECT_THROW(delta(TypePQ(3, 5)), Error);
}

TEST(Delta, SpecializationCommutes) {
  std::mt19937_64 rng(3);
  const auto d = delta(t23);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_alpha(t23, rng);
    EXPECT_EQ(evaluate(d, assignment(d.table(), a)).constant_term(), delta_at(t23, a));
  }
}

TEST(Delta, ScalingLaw) {
  std::mt19937_64 rng(5);
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}}) {
    const TypePQ t(p, q);
    const auto w = weights(t);
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_alpha(t, rng);
      const Rational lambda = frac(trial + 2, 3);
      auto scaled = a;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Rational f = 1;
        for (int k = 0; k < w[i]; ++k) f *= lambda;
        scaled[i] *= f;
      }
      Rational factor = 1;
      for (int k = 0; k < t.c() * p * q; ++k) factor *= lambda;
      EXPECT_EQ(delta_at(t, scaled), factor * delta_at(t, a));
    }
  }
}

TEST(DeltaAt, NamedCurves) {
  EXPECT_EQ(delta_at(t23, coefficient_vector(t23, {{{0, 0}, Rational(1)}})), 1);
  EXPECT_EQ(delta_at(t23, coefficient_vector(t23, {{{2, 0}, Rational(-1)}})), 0);
  EXPECT_EQ(delta_at(t23, coefficient_vector(t23, {})), 0);
}

TEST(Fitting, NamedCurves) {
  const auto nodal = coefficient_vector(t23, {{{2, 0}, Rational(-1)}});
  const auto cusp = coefficient_vector(t23, {});
  const auto smooth = coefficient_vector(t23, {{{0, 0}, Rational(1)}});
  EXPECT_TRUE(fitting_minor_nonzero_at(t23, 1, nodal));
  EXPECT_FALSE(fitting_minor_nonzero_at(t23, 0, nodal));
  EXPECT_FALSE(fitting_minor_nonzero_at(t23, 1, cusp));
  EXPECT_TRUE(fitting_minor_nonzero_at(t23, 2, cusp));
  EXPECT_TRUE(fitting_minor_nonzero_at(t23, 0, smooth));
  EXPECT_EQ(singularity_length(t23, smooth), 0);
  EXPECT_EQ(singularity_length(t23, nodal), 1);
  EXPECT_EQ(singularity_length(t23, cusp), 2);
}

TEST(Fitting, AgreesWithSingularityLengthAndIsMonotone) {
  std::mt19937_64 rng(9);
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}}) {
    const TypePQ t(p, q);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_alpha(t, rng);
      if (trial % 2) {
        // Force a singular point at the origin.
        a[0] = 0;
        a[1] = 0;
        a[static_cast<std::size_t>(make_table({.type = t})->a(0, 1))] = 0;
      }
      const int len = singularity_length(t, a);
      bool prev = false;
      for (int l = 0; l <= t.c(); ++l) {
        const bool nz = fitting_minor_nonzero_at(t, l, a);
        EXPECT_EQ(nz, len <= l) << p << q << " l=" << l;
        EXPECT_TRUE(!prev || nz);
        prev = nz;
        const auto witness = nonzero_minor_at(t, l, a);
        EXPECT_EQ(witness.has_value(), nz);
        const auto lex = first_nonzero_minor_lex(relation_matrix_at(t, a), static_cast<std::size_t>(t.c() - l));
        EXPECT_EQ(lex.has_value(), nz);
      }
      EXPECT_EQ(delta_at(t, a) == 0, len >= 1);
    }
  }
}

TEST(Fitting, WitnessMinorIsNonzero) {
  std::mt19937_64 rng(13);
  const TypePQ t(3, 4);
  const auto a = random_alpha(t, rng);
  const auto m = relation_matrix_at(t, a);
  for (int l = 0; l < t.c(); ++l) {
    const auto w = nonzero_minor_at(t, l, a);
    ASSERT_TRUE(w);
    Matrix<Rational> sub;
    for (auto r : w->rows) {
      sub.emplace_back();
      for (auto c : w->cols) sub.back().push_back(m[r][c]);
    }
    EXPECT_NE(determinant(sub), 0);
  }
}
