#pragma once

// Scalar types shared by every module: exact GMP integers/rationals,
// runtime-precision MPFR reals and a minimal complex wrapper over them.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace wsg {

using Integer = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

template <class T>
struct Complex {
  T re{0};
  T im{0};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    T r = re * o.re - im * o.im;
    T i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    T den = o.re * o.re + o.im * o.im;
    T r = (re * o.re + im * o.im) / den;
    T i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(T(-a.re), T(-a.im)); }

  Complex conj() const { return Complex(re, T(-im)); }
  T norm2() const { return T(re * re + im * im); }
};

using ComplexReal = Complex<Real>;

inline Real abs(const ComplexReal& z) { return Real(sqrt(z.norm2())); }

/// Sets the default MPFR precision for the current thread and restores the
/// previous value on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned digits10_for_bits(unsigned bits);
unsigned current_precision_bits();

/// num/den in lowest terms.
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Real to_real(const Rational& q);
Real to_real(const Integer& z);
double to_double(const Rational& q);

/// Parses "-3", "2/3" or a finite decimal "0.125" / "1e-3" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
/// Fixed number of significant digits, deterministic output.
std::string format_real(const Real& x, int significant_digits = 30);
std::string format_complex(const ComplexReal& z, int significant_digits = 30);

}  // namespace wsg
