#include "wsg/univariate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <set>

namespace wsg {

UPoly upoly_trim(UPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int upoly_degree(const UPoly& f) { return static_cast<int>(f.size()) - 1; }

UPoly upoly_derivative(const UPoly& f) {
  UPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * Rational(static_cast<long>(i)));
  return upoly_trim(out);
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
  if (b.empty()) throw Error(ErrorKind::PreconditionFailed, "division by the zero polynomial");
  UPoly r = upoly_trim(a);
  if (r.size() < b.size()) return {UPoly{}, r};
  UPoly q(r.size() - b.size() + 1, Rational(0));
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational f = r.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    r = upoly_trim(r);
  }
  return {upoly_trim(q), r};
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  a = upoly_trim(a);
  b = upoly_trim(b);
  while (!b.empty()) {
    auto r = upoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const Rational lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

UPoly upoly_squarefree(const UPoly& f) {
  const UPoly g = upoly_gcd(f, upoly_derivative(f));
  if (g.size() <= 1) return upoly_trim(f);
  return upoly_divmod(f, g).first;
}

Rational upoly_eval(const UPoly& f, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

UPoly to_upoly(const SparsePoly& f, std::size_t var) {
  UPoly out;
  for (const auto& [m, c] : f.terms()) {
    if (m.total_degree() != m[var]) throw Error(ErrorKind::PreconditionFailed, "polynomial is not univariate");
    const auto k = static_cast<std::size_t>(m[var]);
    if (out.size() <= k) out.resize(k + 1, Rational(0));
    out[k] += c;
  }
  return upoly_trim(out);
}

SparsePoly from_upoly(const UPoly& f, const TablePtr& table, std::size_t var) {
  std::vector<SparsePoly::Term> terms;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Monomial m;
    m.e[var] = static_cast<std::uint8_t>(i);
    terms.emplace_back(m, f[i]);
  }
  return SparsePoly::from_terms(table, std::move(terms));
}

RationalRoots rational_roots(const UPoly& input) {
  RationalRoots out;
  UPoly f = upoly_squarefree(upoly_trim(input));
  if (f.size() <= 1) return out;
  std::set<Rational> found;
  // Strip the root 0.
  std::size_t low = 0;
  while (low < f.size() && f[low] == 0) ++low;
  if (low > 0) {
    found.insert(Rational(0));
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(low));
  }
  // Primitive integer form.
  Integer den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& c : f) {
    z.push_back(c.get_num() * (den / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  for (auto& c : z) c /= g;
  const std::size_t deg = z.size() - 1;
  if (deg == 1) {
    Rational r(-z[0], z[1]);
    r.canonicalize();
    found.insert(r);
    out.roots.assign(found.begin(), found.end());
    return out;
  }
  if (deg >= 1) {
    // Companion eigenvalues in double, refined by Newton at a precision that
    // resolves 1/(2 lc).
    const double lcd = mpz_get_d(z.back().get_mpz_t());
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) {
      comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -mpz_get_d(z[i].get_mpz_t()) / lcd;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) {
      out.complete = false;
    } else {
      const unsigned bits = static_cast<unsigned>(2 * mpz_sizeinbase(z.back().get_mpz_t(), 2) + 128);
      PrecisionScope scope(bits);
      std::vector<Real> zr;
      for (const auto& c : z) zr.push_back(to_real(c));
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const auto ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) > 1e-6 * (1.0 + std::abs(ev.real()))) continue;
        Real x = ev.real();
        for (int it = 0; it < 200; ++it) {
          Real v = 0, d = 0;
          for (std::size_t k = zr.size(); k-- > 0;) {
            d = d * x + v;
            v = v * x + zr[k];
          }
          if (d == 0) break;
          Real step = v / d;
          x -= step;
          if (abs(step) <= abs(x) * pow(Real(2), -static_cast<int>(bits) + 8) + pow(Real(2), -static_cast<int>(bits) + 8)) break;
        }
        Real scaled = x * to_real(z.back());
        Real rounded = round(scaled);
        Integer k;
        mpfr_get_z(k.get_mpz_t(), rounded.backend().data(), MPFR_RNDN);
        // Neighbouring integers cover rounding at the last bit.
        for (int off = -1; off <= 1; ++off) {
          Rational cand(k + off, z.back());
          cand.canonicalize();
          if (upoly_eval(f, cand) == 0) found.insert(cand);
        }
      }
    }
  }
  out.roots.assign(found.begin(), found.end());
  return out;
}

}  // namespace wsg
