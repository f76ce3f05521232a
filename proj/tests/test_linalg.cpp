#include <gtest/gtest.h>

#include <random>

#include "wsg/linalg.hpp"

using namespace wsg;

namespace {

// Leibniz formula as an independent determinant oracle.
Rational leibniz(const Matrix<Rational>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(Exact, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> v(-3, 3);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix<Rational> a(n, std::vector<Rational>(n));
      for (auto& row : a) {
        for (auto& x : row) x = frac(v(rng), 1 + (trial % 3));
      }
      EXPECT_EQ(determinant(a), leibniz(a));
    }
  }
}

TEST(Exact, RankAndSolve) {
  Matrix<Rational> a{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  EXPECT_EQ(rank(a), 2u);
  EXPECT_EQ(determinant(a), 0);
  EXPECT_FALSE(solve(a, {1, 2, 3}));
  Matrix<Rational> b{{2, 1}, {1, 3}};
  const auto x = solve(b, {3, 5});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], frac(4, 5));
  EXPECT_EQ((*x)[1], frac(7, 5));
}

TEST(Symbolic, MatchesNumericDeterminant) {
  auto t = make_table({.type = std::nullopt, .coefficients = false, .xy = true});
  const auto X = SparsePoly::variable(t, t->x());
  const auto Y = SparsePoly::variable(t, t->y());
  const auto one = SparsePoly::constant(t, 1);
  Matrix<SparsePoly> m{{X, Y, one}, {one, X * Y, Y}, {X + Y, one, X}};
  const auto d = symbolic_determinant(m);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational x = frac(static_cast<long>(rng() % 11) - 5, 2);
    const Rational y = frac(static_cast<long>(rng() % 7) - 3, 3);
    Matrix<Rational> num(3, std::vector<Rational>(3));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) num[i][j] = evaluate(m[i][j], {{"X", x}, {"Y", y}}).constant_term();
    }
    EXPECT_EQ(evaluate(d, {{"X", x}, {"Y", y}}).constant_term(), leibniz(num));
  }
  EXPECT_EQ(symbolic_minor(m, {{0, 2}, {1, 2}}), Y * X - one * one);
}

TEST(Numeric, RankThresholds) {
  PrecisionScope scope(128);
  Matrix<Real> a{{Real(1), Real(2)}, {Real(2), Real(4) + Real("1e-30")}};
  auto r = numeric_rank(a, Real("1e-20"), Real("1e-10"));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_FALSE(r.ambiguous);
  Matrix<Real> b{{Real(1), Real(2)}, {Real(2), Real(4) + Real("1e-15")}};
  r = numeric_rank(b, Real("1e-20"), Real("1e-10"));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_TRUE(r.ambiguous);
}

TEST(Numeric, MinNormSolve) {
  PrecisionScope scope(128);
  Matrix<Real> j{{Real(1), Real(1), Real(0)}};
  const auto x = min_norm_solve(j, {Real(2)});
  EXPECT_LT(abs(x[0] - 1), Real("1e-35"));
  EXPECT_LT(abs(x[1] - 1), Real("1e-35"));
  EXPECT_LT(abs(x[2]), Real("1e-35"));
  Matrix<ComplexReal> c{{ComplexReal(Real(0), Real(1)), ComplexReal(Real(1))}, {ComplexReal(Real(2)), ComplexReal(Real(0))}};
  const auto d = numeric_determinant(c);
  EXPECT_LT(abs(d - ComplexReal(Real(-2))), Real("1e-35"));
}

TEST(Subsets, Lexicographic) {
  const auto s = subsets(4, 2);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s[5], (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(subsets(3, 0).size(), 1u);
  EXPECT_EQ(binomial(8, 4), 70u);
}
