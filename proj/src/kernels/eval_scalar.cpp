#include <cmath>
#include <vector>

#include "wsg/kernels.hpp"

namespace wsg::kernels {

void TermList::add(int n, int m, double coeff) {
  nu.push_back(n);
  mu.push_back(m);
  c.push_back(coeff);
  if (n > max_nu) max_nu = n;
  if (m > max_mu) max_mu = m;
}

void eval_grad_scalar(const TermList& poly, const double* x, const double* y, std::size_t n, double* f, double* fx,
                      double* fy) {
  std::vector<double> xp(static_cast<std::size_t>(poly.max_nu) + 1);
  std::vector<double> yp(static_cast<std::size_t>(poly.max_mu) + 1);
  const std::size_t terms = poly.c.size();
  for (std::size_t i = 0; i < n; ++i) {
    xp[0] = 1.0;
    yp[0] = 1.0;
    for (std::size_t k = 1; k < xp.size(); ++k) xp[k] = xp[k - 1] * x[i];
    for (std::size_t k = 1; k < yp.size(); ++k) yp[k] = yp[k - 1] * y[i];
    double v = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t t = 0; t < terms; ++t) {
      const int a = poly.nu[t];
      const int b = poly.mu[t];
      const double c = poly.c[t];
      v = std::fma(c * xp[static_cast<std::size_t>(a)], yp[static_cast<std::size_t>(b)], v);
      if (a > 0) dx = std::fma(c * a * xp[static_cast<std::size_t>(a - 1)], yp[static_cast<std::size_t>(b)], dx);
      if (b > 0) dy = std::fma(c * b * xp[static_cast<std::size_t>(a)], yp[static_cast<std::size_t>(b - 1)], dy);
    }
    f[i] = v;
    fx[i] = dx;
    fy[i] = dy;
  }
}

}  // namespace wsg::kernels
