#include "wsg/kernels.hpp"

namespace wsg::kernels {

EvalGradFn select_eval_grad() {
#if defined(WSG_HAVE_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &eval_grad_avx2;
#endif
  return &eval_grad_scalar;
}

const char* active_variant() { return select_eval_grad() == &eval_grad_scalar ? "scalar" : "avx2"; }

void eval_grad(const TermList& poly, const double* x, const double* y, std::size_t n, double* f, double* fx,
               double* fy) {
  static const EvalGradFn fn = select_eval_grad();
  fn(poly, x, y, n, f, fx, fy);
}

}  // namespace wsg::kernels
