#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <string>

#include "wsg/kernels.hpp"

using namespace wsg::kernels;

namespace {

TermList random_poly(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> e(0, 7);
  std::uniform_real_distribution<double> c(-3, 3);
  TermList t;
  for (int i = 0; i < terms; ++i) t.add(e(rng), e(rng), c(rng));
  return t;
}

// Naive evaluation with std::pow.
void oracle(const TermList& t, double x, double y, double& f, double& fx, double& fy) {
  f = fx = fy = 0;
  for (std::size_t k = 0; k < t.c.size(); ++k) {
    const int a = t.nu[k], b = t.mu[k];
    f += t.c[k] * std::pow(x, a) * std::pow(y, b);
    if (a > 0) fx += t.c[k] * a * std::pow(x, a - 1) * std::pow(y, b);
    if (b > 0) fy += t.c[k] * b * std::pow(x, a) * std::pow(y, b - 1);
  }
}

}  // namespace

TEST(Kernels, ScalarMatchesNaiveEvaluation) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto poly = random_poly(rng, 12);
  std::vector<double> x(37), y(37), f(37), fx(37), fy(37);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
  }
  eval_grad_scalar(poly, x.data(), y.data(), x.size(), f.data(), fx.data(), fy.data());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double of, ofx, ofy;
    oracle(poly, x[i], y[i], of, ofx, ofy);
    EXPECT_NEAR(f[i], of, 1e-10);
    EXPECT_NEAR(fx[i], ofx, 1e-10);
    EXPECT_NEAR(fy[i], ofy, 1e-10);
  }
}

#if defined(WSG_HAVE_AVX2_KERNEL)
TEST(Kernels, Avx2BitwiseEqualsScalar) {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4, 4);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 31u, 1000u}) {
    const auto poly = random_poly(rng, 1 + static_cast<int>(n % 17));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    std::vector<double> a(3 * n + 1), b(3 * n + 1);
    eval_grad_scalar(poly, x.data(), y.data(), n, a.data(), a.data() + n, a.data() + 2 * n);
    eval_grad_avx2(poly, x.data(), y.data(), n, b.data(), b.data() + n, b.data() + 2 * n);
    EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0) << "n = " << n;
  }
}
#endif

TEST(Kernels, DispatchPicksSupportedVariant) {
  const std::string v = active_variant();
  EXPECT_TRUE(v == "avx2" || v == "scalar");
#if defined(WSG_HAVE_AVX2_KERNEL)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) EXPECT_EQ(v, "avx2");
#endif
  TermList t;
  t.add(2, 1, 1.5);  // 1.5 x^2 y
  const double x = 2, y = 3;
  double f, fx, fy;
  eval_grad(t, &x, &y, 1, &f, &fx, &fy);
  EXPECT_EQ(f, 18);
  EXPECT_EQ(fx, 18);
  EXPECT_EQ(fy, 6);
}
