#include <immintrin.h>

#include <vector>

#include "wsg/kernels.hpp"

namespace wsg::kernels {

// Four points per iteration. Terms with a = 0 or b = 0 contribute zero to the
// matching derivative through a zero coefficient, so the inner loop has no
// branches.
void eval_grad_avx2(const TermList& poly, const double* x, const double* y, std::size_t n, double* f, double* fx,
                    double* fy) {
  const std::size_t terms = poly.c.size();
  // Power tables, four lanes per exponent.
  std::vector<double> xp(4 * (static_cast<std::size_t>(poly.max_nu) + 1));
  std::vector<double> yp(4 * (static_cast<std::size_t>(poly.max_mu) + 1));
  auto px = [&](std::size_t k) { return _mm256_loadu_pd(xp.data() + 4 * k); };
  auto py = [&](std::size_t k) { return _mm256_loadu_pd(yp.data() + 4 * k); };
  std::vector<double> cdx(terms), cdy(terms);
  std::vector<int> adx(terms), bdy(terms);
  for (std::size_t t = 0; t < terms; ++t) {
    cdx[t] = poly.c[t] * poly.nu[t];
    cdy[t] = poly.c[t] * poly.mu[t];
    adx[t] = poly.nu[t] > 0 ? poly.nu[t] - 1 : 0;
    bdy[t] = poly.mu[t] > 0 ? poly.mu[t] - 1 : 0;
  }
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(xp.data(), one);
    _mm256_storeu_pd(yp.data(), one);
    for (std::size_t k = 1; 4 * k < xp.size(); ++k) _mm256_storeu_pd(xp.data() + 4 * k, _mm256_mul_pd(px(k - 1), vx));
    for (std::size_t k = 1; 4 * k < yp.size(); ++k) _mm256_storeu_pd(yp.data() + 4 * k, _mm256_mul_pd(py(k - 1), vy));
    __m256d v = _mm256_setzero_pd();
    __m256d dx = _mm256_setzero_pd();
    __m256d dy = _mm256_setzero_pd();
    for (std::size_t t = 0; t < terms; ++t) {
      const auto a = static_cast<std::size_t>(poly.nu[t]);
      const auto b = static_cast<std::size_t>(poly.mu[t]);
      const __m256d xa = px(a);
      const __m256d yb = py(b);
      v = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_set1_pd(poly.c[t]), xa), yb, v);
      dx = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_set1_pd(cdx[t]), px(static_cast<std::size_t>(adx[t]))), yb, dx);
      dy = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_set1_pd(cdy[t]), xa), py(static_cast<std::size_t>(bdy[t])), dy);
    }
    _mm256_storeu_pd(f + i, v);
    _mm256_storeu_pd(fx + i, dx);
    _mm256_storeu_pd(fy + i, dy);
  }
  if (i < n) eval_grad_scalar(poly, x + i, y + i, n - i, f + i, fx + i, fy + i);
}

}  // namespace wsg::kernels
