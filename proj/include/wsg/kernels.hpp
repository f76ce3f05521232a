#pragma once

// Batch evaluation of a bivariate polynomial and its gradient at many real
// points. Scalar reference plus an AVX2/FMA variant chosen at runtime.

#include <cstddef>
#include <vector>

namespace wsg::kernels {

/// sum c_k X^nu_k Y^mu_k in double precision.
struct TermList {
  std::vector<int> nu;
  std::vector<int> mu;
  std::vector<double> c;
  int max_nu = 0;
  int max_mu = 0;

  void add(int n, int m, double coeff);
};

using EvalGradFn = void (*)(const TermList& poly, const double* x, const double* y, std::size_t n, double* f,
                            double* fx, double* fy);

void eval_grad_scalar(const TermList& poly, const double* x, const double* y, std::size_t n, double* f, double* fx,
                      double* fy);
#if defined(WSG_HAVE_AVX2_KERNEL)
void eval_grad_avx2(const TermList& poly, const double* x, const double* y, std::size_t n, double* f, double* fx,
                    double* fy);
#endif

/// Best variant supported by the running CPU.
EvalGradFn select_eval_grad();
/// "avx2" or "scalar".
const char* active_variant();

/// Dispatching entry point.
void eval_grad(const TermList& poly, const double* x, const double* y, std::size_t n, double* f, double* fx,
               double* fy);

}  // namespace wsg::kernels
