#include <gtest/gtest.h>

#include <random>
#include <set>

#include "wsg/univariate.hpp"

using namespace wsg;

namespace {

UPoly from_roots(const std::vector<Rational>& roots, const Rational& lc) {
  UPoly f{lc};
  for (const auto& r : roots) {
    UPoly next(f.size() + 1, Rational(0));
    for (std::size_t i = 0; i < f.size(); ++i) {
      next[i + 1] += f[i];
      next[i] -= r * f[i];
    }
    f = next;
  }
  return f;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  UPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

TEST(UPoly, DivmodReconstructs) {
  const UPoly a{frac(1, 2), 3, -2, 5, 1};
  const UPoly b{-1, 0, 2};
  const auto [q, r] = upoly_divmod(a, b);
  UPoly back = mul(q, b);
  back.resize(std::max(back.size(), r.size()), Rational(0));
  for (std::size_t i = 0; i < r.size(); ++i) back[i] += r[i];
  EXPECT_EQ(upoly_trim(back), a);
  EXPECT_LT(upoly_degree(r), upoly_degree(b));
}

TEST(UPoly, GcdAndSquarefree) {
  const UPoly f = from_roots({1, 1, 2, frac(-1, 3)}, 6);
  const UPoly g = from_roots({1, frac(-1, 3), 5}, 1);
  EXPECT_EQ(upoly_gcd(f, g), from_roots({1, frac(-1, 3)}, 1));
  EXPECT_EQ(upoly_squarefree(f), from_roots({1, 2, frac(-1, 3)}, 6));
}

TEST(RationalRoots, MixedRationalAndIrrational) {
  // (x^2 - 2)(x^2 + 1)(3x - 7)(x + 5/4) x^2
  UPoly f = mul(mul(UPoly{-2, 0, 1}, UPoly{1, 0, 1}), from_roots({frac(7, 3), frac(-5, 4), 0, 0}, 1));
  const auto r = rational_roots(f);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.roots, (std::vector<Rational>{frac(-5, 4), 0, frac(7, 3)}));
}

TEST(RationalRoots, RandomProductsRecoverEveryRoot) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    std::set<Rational> roots;
    while (roots.size() < 5) roots.insert(frac(num(rng), den(rng)));
    const std::vector<Rational> rv(roots.begin(), roots.end());
    const UPoly f = mul(from_roots(rv, frac(num(rng) | 1, 1)), UPoly{3, 1, 1});
    EXPECT_EQ(rational_roots(f).roots, rv);
  }
}

TEST(RationalRoots, NoneForIrreducible) { EXPECT_TRUE(rational_roots(UPoly{-2, 0, 0, 1}).roots.empty()); }
