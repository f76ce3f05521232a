#pragma once

// Dense univariate polynomials over Q: gcd, square-free part and rational
// roots.

#include <vector>

#include "wsg/numeric.hpp"
#include "wsg/polyring.hpp"

namespace wsg {

/// Coefficients in ascending degree, no trailing zeros (empty = 0).
using UPoly = std::vector<Rational>;

UPoly upoly_trim(UPoly f);
int upoly_degree(const UPoly& f);
UPoly upoly_derivative(const UPoly& f);
/// Quotient and remainder.
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
/// Monic gcd.
UPoly upoly_gcd(UPoly a, UPoly b);
UPoly upoly_squarefree(const UPoly& f);
Rational upoly_eval(const UPoly& f, const Rational& x);

/// The sparse polynomial f, which may only involve variable `var`, as a UPoly.
UPoly to_upoly(const SparsePoly& f, std::size_t var);
SparsePoly from_upoly(const UPoly& f, const TablePtr& table, std::size_t var);

struct RationalRoots {
  std::vector<Rational> roots;  // ascending, distinct
  /// False when the numeric root location failed; callers verify
  /// completeness independently.
  bool complete = true;
};

/// Distinct rational roots. A rational root a/b of a primitive integer
/// polynomial has b | lc, so lc * root is an integer: real roots are located
/// numerically, lc * root is rounded and every candidate is checked exactly.
RationalRoots rational_roots(const UPoly& f);

}  // namespace wsg
