#include "wsg/curves.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <numeric>
#include <set>

#include "wsg/kernels.hpp"
#include "wsg/univariate.hpp"

namespace wsg {

std::string_view to_string(Exactness e) { return e == Exactness::Exact ? "exact" : "approx"; }

Real Tolerances::sing() const {
  if (tol_sing > 0) return Real(tol_sing);
  return Real(pow(Real(2), -static_cast<int>(precision_bits) + 24));
}

// ---------------------------------------------------------------------------
// Curves.

void validate_curve(int p, int q, const std::map<std::pair<int, int>, Rational>& coeffs) {
  const TypePQ t(p, q);
  for (const auto& [key, value] : coeffs) {
    const auto [nu, mu] = key;
    if (nu < 0 || mu < 0 || nu * p + mu * q >= p * q) {
      throw Error(ErrorKind::BadExponent, "(" + std::to_string(nu) + "," + std::to_string(mu) + "): " +
                                              std::to_string(nu * p + mu * q) + " >= " + std::to_string(p * q));
    }
  }
}

Curve Curve::exact(const TypePQ& t, const std::map<std::pair<int, int>, Rational>& coeffs) {
  validate_curve(t.p(), t.q(), coeffs);
  return exact(t, coefficient_vector(t, coeffs));
}

Curve Curve::exact(const TypePQ& t, std::vector<Rational> coeffs) {
  if (static_cast<int>(coeffs.size()) != t.n()) throw Error(ErrorKind::ArityMismatch, "coefficient count differs from n");
  Curve c(t, Exactness::Exact);
  c.exact_ = std::move(coeffs);
  return c;
}

Curve Curve::approx(const TypePQ& t, std::vector<Real> coeffs, unsigned precision_bits) {
  if (static_cast<int>(coeffs.size()) != t.n()) throw Error(ErrorKind::ArityMismatch, "coefficient count differs from n");
  Curve c(t, Exactness::Approx);
  c.bits_ = precision_bits;
  // Enough decimal digits to round-trip the binary value.
  const int digits = static_cast<int>(digits10_for_bits(precision_bits)) + 3;
  for (const auto& v : coeffs) c.approx_.push_back(format_real(v, digits));
  return c;
}

const std::vector<Rational>& Curve::exact_coeffs() const {
  if (!is_exact()) throw Error(ErrorKind::PreconditionFailed, "curve has approximate coefficients");
  return exact_;
}

std::vector<Real> Curve::real_coeffs() const {
  std::vector<Real> out;
  if (is_exact()) {
    for (const auto& q : exact_) out.push_back(to_real(q));
  } else {
    for (const auto& s : approx_) out.emplace_back(s);
  }
  return out;
}

SparsePoly Curve::polynomial() const { return specialized_curve(t_, exact_coeffs()); }

std::string Curve::to_string() const {
  if (is_exact()) return polynomial().to_string();
  std::string out = "Y^" + std::to_string(t_.p()) + " - X^" + std::to_string(t_.q());
  const auto exps = coefficient_exponents(t_);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (approx_[i].find_first_not_of("0.e+-") == std::string::npos) continue;  // zero
    out += " + (" + approx_[i] + ")";
    if (exps[i].first) out += "*X^" + std::to_string(exps[i].first);
    if (exps[i].second) out += "*Y^" + std::to_string(exps[i].second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

CurveEvaluator::CurveEvaluator(const TypePQ& t, std::vector<Real> coeffs)
    : t_(t), coeffs_(std::move(coeffs)), exps_(coefficient_exponents(t)) {
  if (static_cast<int>(coeffs_.size()) != t.n()) throw Error(ErrorKind::ArityMismatch, "coefficient count differs from n");
  exps_.emplace_back(0, t.p());
  coeffs_.emplace_back(1);
  exps_.emplace_back(t.q(), 0);
  coeffs_.emplace_back(-1);
}

namespace {

template <class S>
Jet<S> jet_impl(const std::vector<std::pair<int, int>>& exps, const std::vector<Real>& coeffs, int max_x, int max_y,
                const S& x, const S& y, const S& zero) {
  std::vector<S> xp(static_cast<std::size_t>(max_x) + 1, zero), yp(static_cast<std::size_t>(max_y) + 1, zero);
  xp[0] = S(Real(1));
  yp[0] = S(Real(1));
  for (std::size_t k = 1; k < xp.size(); ++k) xp[k] = xp[k - 1] * x;
  for (std::size_t k = 1; k < yp.size(); ++k) yp[k] = yp[k - 1] * y;
  Jet<S> j{zero, zero, zero, zero, zero, zero};
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const auto [a, b] = exps[i];
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    const S c = S(coeffs[i]);
    j.f = j.f + c * xp[ua] * yp[ub];
    if (a >= 1) j.fx = j.fx + c * S(Real(a)) * xp[ua - 1] * yp[ub];
    if (b >= 1) j.fy = j.fy + c * S(Real(b)) * xp[ua] * yp[ub - 1];
    if (a >= 2) j.fxx = j.fxx + c * S(Real(a * (a - 1))) * xp[ua - 2] * yp[ub];
    if (a >= 1 && b >= 1) j.fxy = j.fxy + c * S(Real(a * b)) * xp[ua - 1] * yp[ub - 1];
    if (b >= 2) j.fyy = j.fyy + c * S(Real(b * (b - 1))) * xp[ua] * yp[ub - 2];
  }
  return j;
}

}  // namespace

Jet<ComplexReal> CurveEvaluator::jet(const ComplexReal& x, const ComplexReal& y) const {
  return jet_impl<ComplexReal>(exps_, coeffs_, t_.q(), t_.p(), x, y, ComplexReal(Real(0)));
}

Jet<Real> CurveEvaluator::jet(const Real& x, const Real& y) const {
  return jet_impl<Real>(exps_, coeffs_, t_.q(), t_.p(), x, y, Real(0));
}

Real CurveEvaluator::scale(const ComplexReal& x, const ComplexReal& y) const {
  const Real ax = abs(x);
  const Real ay = abs(y);
  Real s = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    s += Real(abs(coeffs_[i])) * Real(pow(ax, exps_[i].first)) * Real(pow(ay, exps_[i].second));
  }
  return Real(std::max(s, Real(1)));
}

bool SingularPoint::is_real(const Real& tol) const {
  return abs(x.im) <= tol * (1 + abs(x.re)) && abs(y.im) <= tol * (1 + abs(y.re));
}

// ---------------------------------------------------------------------------
// Singular points, exact path.

namespace {

struct ExactSolve {
  bool complete = false;
  std::vector<std::pair<Rational, Rational>> points;
};

UPoly eliminant(const GroebnerBasis& gb, std::size_t var) {
  for (const auto& g : gb.polys()) {
    bool only = true;
    for (const auto& [m, c] : g.terms()) {
      if (m.total_degree() != m[var]) {
        only = false;
        break;
      }
    }
    if (only && !g.is_constant()) return to_upoly(g, var);
  }
  throw Error(ErrorKind::InternalConsistency, "zero-dimensional ideal without an eliminant");
}

ExactSolve solve_exact(const Curve& c, const GroebnerBudget& budget) {
  ExactSolve out;
  const SparsePoly f = c.polynomial();
  const auto [fx, fy] = partials(f);
  const TablePtr& table = f.table();
  const std::size_t X = table->x();
  const std::size_t Y = table->y();
  const std::vector<SparsePoly> gens{f, fx, fy};
  const auto lex_xy = groebner_basis(gens, MonomialOrder::blocks({{X}, {Y}}), budget);
  if (lex_xy.is_unit()) {
    out.complete = true;
    return out;
  }
  const auto lex_yx = groebner_basis(gens, MonomialOrder::blocks({{Y}, {X}}), budget);
  const UPoly ey = eliminant(lex_xy, Y);
  const UPoly ex = eliminant(lex_yx, X);

  const auto ys = rational_roots(ey);
  std::set<std::pair<Rational, Rational>> pts;
  for (const auto& y0 : ys.roots) {
    UPoly g;
    for (const auto& p : lex_xy.polys()) {
      const UPoly u = to_upoly(p.substitute({{Y, y0}}), X);
      g = g.empty() ? u : upoly_gcd(g, u);
    }
    if (g.empty()) continue;
    for (const auto& x0 : rational_roots(g).roots) {
      const std::map<std::size_t, Rational> at{{X, x0}, {Y, y0}};
      if (f.substitute(at).is_zero() && fx.substitute(at).is_zero() && fy.substitute(at).is_zero()) {
        pts.emplace(x0, y0);
      }
    }
  }
  out.points.assign(pts.begin(), pts.end());
  // The radical is I + (sqfree(e_X), sqfree(e_Y)); its colength counts the
  // distinct singular points over the algebraic closure.
  std::vector<SparsePoly> rad = gens;
  rad.push_back(from_upoly(upoly_squarefree(ex), table, X));
  rad.push_back(from_upoly(upoly_squarefree(ey), table, Y));
  const auto info = quotient_dimension(Ideal(table, rad), budget);
  out.complete = info.finite_dimensional && info.dimension == out.points.size();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Critical points by eigenvectors.

namespace {

struct Newton2Result {
  ComplexReal x, y;
  bool converged = false;
  bool simple = false;
};

Newton2Result newton_critical(const CurveEvaluator& ev, ComplexReal x, ComplexReal y, unsigned bits) {
  Newton2Result r;
  const Real eps = pow(Real(2), -static_cast<int>(bits) + 12);
  for (int it = 0; it < 80; ++it) {
    const auto j = ev.jet(x, y);
    const ComplexReal det = j.hessian();
    if (det.norm2() == 0) break;
    const ComplexReal dx = (j.fyy * j.fx - j.fxy * j.fy) / det;
    const ComplexReal dy = (j.fxx * j.fy - j.fxy * j.fx) / det;
    x -= dx;
    y -= dy;
    const Real step = abs(dx) + abs(dy);
    if (!isfinite(step)) break;
    if (step <= eps * (1 + abs(x) + abs(y))) {
      r.converged = true;
      break;
    }
  }
  r.x = x;
  r.y = y;
  if (r.converged) {
    const auto j = ev.jet(x, y);
    const Real s = ev.scale(x, y);
    const Real grad = std::max(abs(j.fx), abs(j.fy)) / s;
    r.converged = grad <= pow(Real(2), -static_cast<int>(bits) + 24);
    r.simple = abs(j.hessian()) / (s * s) > pow(Real(2), -static_cast<int>(bits) / 2);
  }
  return r;
}

bool close(const ComplexReal& x1, const ComplexReal& y1, const ComplexReal& x2, const ComplexReal& y2, const Real& tol) {
  const Real d = abs(x1 - x2) + abs(y1 - y2);
  return d <= tol * (1 + abs(x1) + abs(y1));
}

bool point_less(const ComplexReal& x1, const ComplexReal& y1, const ComplexReal& x2, const ComplexReal& y2) {
  if (x1.re != x2.re) return x1.re < x2.re;
  if (y1.re != y2.re) return y1.re < y2.re;
  if (x1.im != x2.im) return x1.im < x2.im;
  return y1.im < y2.im;
}

}  // namespace

namespace {

// Real critical points missed by the eigenvector pass: local minima of
// |F_X| + |F_Y| on a grid, evaluated in double by the batch kernel, are
// polished by Newton. The critical scheme has length c, so c distinct points
// are all simple.
void add_grid_seeds(const CurveEvaluator& ev, const std::vector<Real>& coeffs, const Tolerances& tol,
                    CriticalPoints& out) {
  kernels::TermList poly;
  double radius = 1;
  for (std::size_t i = 0; i < ev.exponents().size(); ++i) {
    const double c = static_cast<double>(ev.coefficients()[i]);
    poly.add(ev.exponents()[i].first, ev.exponents()[i].second, c);
    if (i < coeffs.size()) radius += std::abs(c);
  }
  constexpr std::size_t kGrid = 257;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < kGrid; ++i) {
    for (std::size_t j = 0; j < kGrid; ++j) {
      xs.push_back(-radius + 2 * radius * static_cast<double>(i) / (kGrid - 1));
      ys.push_back(-radius + 2 * radius * static_cast<double>(j) / (kGrid - 1));
    }
  }
  std::vector<double> f(xs.size()), fx(xs.size()), fy(xs.size());
  kernels::eval_grad(poly, xs.data(), ys.data(), xs.size(), f.data(), fx.data(), fy.data());
  auto g = [&](std::size_t i, std::size_t j) { return std::abs(fx[i * kGrid + j]) + std::abs(fy[i * kGrid + j]); };
  const Real sep(tol.tol_sep);
  for (std::size_t i = 1; i + 1 < kGrid; ++i) {
    for (std::size_t j = 1; j + 1 < kGrid; ++j) {
      const double v = g(i, j);
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        for (int dj = -1; dj <= 1 && minimum; ++dj) {
          if (di == 0 && dj == 0) continue;
          minimum = v <= g(i + static_cast<std::size_t>(di), j + static_cast<std::size_t>(dj));
        }
      }
      if (!minimum) continue;
      const auto res = newton_critical(ev, ComplexReal(Real(xs[i * kGrid + j])), ComplexReal(Real(ys[i * kGrid + j])),
                                       tol.precision_bits);
      if (!res.converged) continue;
      bool dup = false;
      for (const auto& [px, py] : out.points) dup = dup || close(px, py, res.x, res.y, sep);
      if (!dup) out.points.emplace_back(res.x, res.y);
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const auto& a, const auto& b) { return point_less(a.first, a.second, b.first, b.second); });
  out.complete = static_cast<int>(out.points.size()) == ev.type().c();
}

}  // namespace

CriticalPoints critical_points(const Curve& c, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  const TypePQ& t = c.type();
  const auto coeffs = c.real_coeffs();
  const CurveEvaluator ev(t, coeffs);
  BasisReducer<Real> red(
      t, coeffs, [](const Rational& r) { return to_real(r); }, [](const Real& v) { return v == 0; });
  const auto mx = multiplication_matrix(red, 1, 0);
  const auto my = multiplication_matrix(red, 0, 1);
  const std::vector<Real> r1 = red.reduce(0, 0);
  const std::vector<Real> rx = red.reduce(1, 0);
  const std::vector<Real> ry = red.reduce(0, 1);
  const auto n = static_cast<Eigen::Index>(t.c());
  const Real sep(tol.tol_sep);

  CriticalPoints out;
  for (double shift : {0.7548776662466927, -1.3247179572447460, 2.2055694304005903}) {
    Eigen::MatrixXd lt(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        lt(j, i) = static_cast<double>(mx[ui][uj]) + shift * static_cast<double>(my[ui][uj]);
      }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(lt, false);
    if (es.info() != Eigen::Success) continue;
    std::vector<std::pair<ComplexReal, ComplexReal>> pts;
    bool all_simple = true;
    const Eigen::MatrixXcd ltc = lt.cast<std::complex<double>>();
    for (Eigen::Index k = 0; k < n; ++k) {
      // Eigenvectors by shifted inverse iteration; more robust than the
      // solver's own back-substitution for nearly defective matrices.
      const std::complex<double> lambda = es.eigenvalues()[k];
      const double shift_eps = 1e-10 * (1 + std::abs(lambda));
      Eigen::MatrixXcd shifted = ltc;
      shifted.diagonal().array() -= lambda + shift_eps;
      const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
      Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n);
      for (int it = 0; it < 3; ++it) {
        v = lu.solve(v);
        v /= v.norm();
      }
      std::complex<double> d1 = 0, dx = 0, dy = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        d1 += v(i) * static_cast<double>(r1[ui]);
        dx += v(i) * static_cast<double>(rx[ui]);
        dy += v(i) * static_cast<double>(ry[ui]);
      }
      if (std::abs(d1) == 0) {
        all_simple = false;
        continue;
      }
      const std::complex<double> x0 = dx / d1, y0 = dy / d1;
      auto res = newton_critical(ev, ComplexReal(Real(x0.real()), Real(x0.imag())),
                                 ComplexReal(Real(y0.real()), Real(y0.imag())), tol.precision_bits);
      if (!res.converged) {
        all_simple = false;
        continue;
      }
      all_simple = all_simple && res.simple;
      bool dup = false;
      for (const auto& [px, py] : pts) dup = dup || close(px, py, res.x, res.y, sep);
      if (!dup) pts.emplace_back(res.x, res.y);
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return point_less(a.first, a.second, b.first, b.second); });
    const bool complete = all_simple && static_cast<Eigen::Index>(pts.size()) == n;
    if (complete || pts.size() > out.points.size()) {
      out.points = std::move(pts);
      out.complete = complete;
    }
    if (out.complete) break;
  }
  if (!out.complete) add_grid_seeds(ev, coeffs, tol, out);
  return out;
}

SingularPoint classify_point(const CurveEvaluator& ev, const ComplexReal& x, const ComplexReal& y,
                             const Tolerances& tol) {
  SingularPoint sp;
  sp.x = x;
  sp.y = y;
  const auto j = ev.jet(x, y);
  const Real s = ev.scale(x, y);
  sp.residual = std::max({abs(j.f), abs(j.fx), abs(j.fy)}) / s;
  sp.hessian = j.hessian();
  sp.is_node = abs(sp.hessian) / (s * s) >= Real(tol.tol_node);
  return sp;
}

std::optional<std::pair<ComplexReal, ComplexReal>> polish_critical_point(const CurveEvaluator& ev, ComplexReal x,
                                                                         ComplexReal y, unsigned precision_bits) {
  const auto r = newton_critical(ev, std::move(x), std::move(y), precision_bits);
  if (!r.converged) return std::nullopt;
  return std::make_pair(r.x, r.y);
}

SingularLocus singular_points(const Curve& c, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  SingularLocus out;
  if (c.is_exact()) {
    std::optional<ExactSolve> exact;
    try {
      exact = solve_exact(c, tol.groebner);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceBudgetExceeded) throw;
    }
    if (exact && exact->complete) {
      out.method = "exact";
      out.certified = true;
      out.nodes.exactness = Exactness::Exact;
      const SparsePoly f = c.polynomial();
      const SparsePoly h = hessian(f);
      const auto& table = *f.table();
      for (const auto& [x0, y0] : exact->points) {
        SingularPoint sp;
        sp.exact_x = x0;
        sp.exact_y = y0;
        sp.x = ComplexReal(to_real(x0));
        sp.y = ComplexReal(to_real(y0));
        sp.exact_hessian = h.substitute({{table.x(), x0}, {table.y(), y0}}).constant_term();
        sp.hessian = ComplexReal(to_real(*sp.exact_hessian));
        sp.residual = 0;
        sp.is_node = *sp.exact_hessian != 0;
        (sp.is_node ? out.nodes.points : out.others).push_back(std::move(sp));
      }
      return out;
    }
  }
  const auto crit = critical_points(c, tol);
  out.method = "eigen";
  out.critical_points = static_cast<int>(crit.points.size());
  if (!crit.complete) {
    throw Error(ErrorKind::SolverIncomplete, "found " + std::to_string(crit.points.size()) + " of " +
                                                 std::to_string(c.type().c()) + " simple critical points");
  }
  out.certified = true;
  out.nodes.exactness = Exactness::Approx;
  const CurveEvaluator ev(c);
  const Real sing = tol.sing();
  for (const auto& [x, y] : crit.points) {
    auto sp = classify_point(ev, x, y, tol);
    if (sp.residual > sing) continue;
    (sp.is_node ? out.nodes.points : out.others).push_back(std::move(sp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Families.

Curve one_node_curve(const TypePQ& t, const Rational& a, const Rational& b, const Rational& s) {
  if (s == 0) throw Error(ErrorKind::PreconditionFailed, "s must be nonzero");
  auto table = make_table({.type = t, .coefficients = false, .xy = true});
  const auto X = SparsePoly::variable(table, table->x());
  const auto Y = SparsePoly::variable(table, table->y());
  const auto xa = X - SparsePoly::constant(table, a);
  const auto yb = Y - SparsePoly::constant(table, b);
  const SparsePoly f = yb.pow(t.p()) - xa.pow(t.q()) + xa * yb * s;
  std::map<std::pair<int, int>, Rational> coeffs;
  for (const auto& [m, c] : f.terms()) {
    const int nu = m[table->x()];
    const int mu = m[table->y()];
    if ((nu == t.q() && mu == 0) || (nu == 0 && mu == t.p())) continue;
    coeffs[{nu, mu}] = c;
  }
  return Curve::exact(t, coeffs);
}

namespace {

/// Coefficients of D_n in ascending degree.
std::vector<Integer> dickson(int n) {
  std::vector<Integer> d0{2}, d1{0, 1};
  if (n == 0) return d0;
  for (int k = 2; k <= n; ++k) {
    std::vector<Integer> next(static_cast<std::size_t>(k) + 1, Integer(0));
    for (std::size_t i = 0; i < d1.size(); ++i) next[i + 1] += d1[i];
    for (std::size_t i = 0; i < d0.size(); ++i) next[i] -= d0[i];
    d0 = std::move(d1);
    d1 = std::move(next);
  }
  return d1;
}

}  // namespace

LissajousCurve lissajous_curve(const TypePQ& t, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  const int p = t.p();
  const int q = t.q();
  std::map<std::pair<int, int>, Rational> coeffs;
  const auto dp = dickson(p);
  const auto dq = dickson(q);
  for (int mu = 0; mu < p; ++mu) {
    if (dp[static_cast<std::size_t>(mu)] != 0) coeffs[{0, mu}] += Rational(dp[static_cast<std::size_t>(mu)]);
  }
  for (int nu = 0; nu < q; ++nu) {
    if (dq[static_cast<std::size_t>(nu)] != 0) coeffs[{nu, 0}] -= Rational(dq[static_cast<std::size_t>(nu)]);
  }
  for (auto it = coeffs.begin(); it != coeffs.end();) it = it->second == 0 ? coeffs.erase(it) : std::next(it);
  LissajousCurve out{Curve::exact(t, coeffs), {}, ""};
  out.normalization =
      "F = D_p(Y) - D_q(X), D_n(2cos s) = 2cos(n s); parameterization X = 2cos(p s), Y = 2cos(q s)";

  const CurveEvaluator ev(out.curve);
  const Real pi = acos(Real(-1));
  const Real sing = tol.sing();
  out.nodes.exactness = Exactness::Approx;
  for (int k = 1; k < q; ++k) {
    for (int j = 1; j < p; ++j) {
      if ((k - j) % 2 != 0) continue;
      const Real x = 2 * cos(pi * k / q);
      const Real y = 2 * cos(pi * j / p);
      auto sp = classify_point(ev, ComplexReal(x), ComplexReal(y), tol);
      if (sp.residual > sing || !sp.is_node) {
        throw Error(ErrorKind::NodeCountMismatch, "Lissajous point (" + std::to_string(k) + "," + std::to_string(j) +
                                                      ") failed verification");
      }
      out.nodes.points.push_back(std::move(sp));
    }
  }
  std::sort(out.nodes.points.begin(), out.nodes.points.end(),
            [](const SingularPoint& a, const SingularPoint& b) { return point_less(a.x, a.y, b.x, b.y); });
  if (static_cast<int>(out.nodes.size()) != t.d()) {
    throw Error(ErrorKind::NodeCountMismatch,
                "expected " + std::to_string(t.d()) + " nodes, verified " + std::to_string(out.nodes.size()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gap matrix and semigroup.

Matrix<ComplexReal> gap_matrix(const TypePQ& t, const NodeSet& nodes) {
  const auto gaps = gap_descriptors(t);
  Matrix<ComplexReal> e;
  for (const auto& pt : nodes.points) {
    std::vector<ComplexReal> row;
    for (const auto& g : gaps) {
      ComplexReal v(Real(1));
      for (int i = 0; i < g.a; ++i) v *= pt.x;
      for (int i = 0; i < g.b; ++i) v *= pt.y;
      row.push_back(v);
    }
    e.push_back(std::move(row));
  }
  return e;
}

std::optional<Matrix<Rational>> exact_gap_matrix(const TypePQ& t, const NodeSet& nodes) {
  const auto gaps = gap_descriptors(t);
  Matrix<Rational> e;
  for (const auto& pt : nodes.points) {
    if (!pt.is_exact()) return std::nullopt;
    std::vector<Rational> row;
    for (const auto& g : gaps) {
      Rational v = 1;
      for (int i = 0; i < g.a; ++i) v *= *pt.exact_x;
      for (int i = 0; i < g.b; ++i) v *= *pt.exact_y;
      row.push_back(v);
    }
    e.push_back(std::move(row));
  }
  return e;
}

bool DhValue::nonzero(const Real& tol) const {
  if (exact) return *exact != 0;
  return abs(value) > tol;
}

DhValue dh_determinant(const TypePQ& t, const NodeSet& nodes, const std::vector<GapDescriptor>& closed) {
  if (nodes.size() != closed.size()) throw Error(ErrorKind::ArityMismatch, "need as many nodes as closed gaps");
  DhValue out;
  if (closed.empty()) {
    out.value = ComplexReal(Real(1));
    out.exact = Rational(1);
    return out;
  }
  if (const auto e = exact_gap_matrix(t, nodes)) {
    Matrix<Rational> sub;
    for (const auto& row : *e) {
      sub.emplace_back();
      for (const auto& g : closed) sub.back().push_back(row[static_cast<std::size_t>(g.index - 1)]);
    }
    out.exact = determinant(sub);
    out.value = ComplexReal(to_real(*out.exact));
    return out;
  }
  const auto e = gap_matrix(t, nodes);
  Matrix<ComplexReal> sub;
  for (const auto& row : e) {
    sub.emplace_back();
    for (const auto& g : closed) sub.back().push_back(row[static_cast<std::size_t>(g.index - 1)]);
  }
  out.value = numeric_determinant(sub);
  return out;
}

NodeSemigroup node_semigroup(const Curve& c, const NodeSet& nodes, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  const TypePQ& t = c.type();
  const auto gaps = gap_descriptors(t);
  const std::size_t l = nodes.size();
  std::vector<std::size_t> pivots;  // 0-based gap positions, scan order

  if (const auto e = exact_gap_matrix(t, nodes)) {
    Matrix<Rational> chosen(l);
    std::size_t r = 0;
    for (std::size_t j = gaps.size(); j-- > 0;) {
      auto trial = chosen;
      for (std::size_t i = 0; i < l; ++i) trial[i].push_back((*e)[i][j]);
      const std::size_t rk = rank(trial);
      if (rk > r) {
        chosen = std::move(trial);
        r = rk;
        pivots.push_back(j);
      }
    }
  } else {
    // Modified Gram-Schmidt with reorthogonalization on complex columns.
    const auto en = gap_matrix(t, nodes);
    const Real tol_rank(tol.tol_rank);
    const Real tol_amb(tol.tol_ambiguous);
    std::vector<std::vector<ComplexReal>> basis;
    for (std::size_t j = gaps.size(); j-- > 0;) {
      std::vector<ComplexReal> v(l);
      Real norm0 = 0;
      for (std::size_t i = 0; i < l; ++i) {
        v[i] = en[i][j];
        norm0 += v[i].norm2();
      }
      norm0 = sqrt(norm0);
      if (norm0 == 0) continue;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          ComplexReal dot(Real(0));
          for (std::size_t i = 0; i < l; ++i) dot += b[i].conj() * v[i];
          for (std::size_t i = 0; i < l; ++i) v[i] -= dot * b[i];
        }
      }
      Real norm = 0;
      for (const auto& x : v) norm += x.norm2();
      norm = sqrt(norm);
      const Real rel = norm / norm0;
      if (rel <= tol_rank) continue;
      if (rel < tol_amb) {
        throw Error(ErrorKind::RankDeficient, "column for gap " + std::to_string(gaps[j].gamma) +
                                                  " is neither clearly dependent nor independent (relative residual " +
                                                  format_real(rel, 6) + ")");
      }
      for (auto& x : v) x = x / ComplexReal(norm);
      basis.push_back(std::move(v));
      pivots.push_back(j);
    }
  }
  if (pivots.size() != l) {
    throw Error(ErrorKind::RankDeficient,
                "rank of the gap matrix is " + std::to_string(pivots.size()) + " for " + std::to_string(l) + " nodes");
  }
  NodeSemigroup out{hpq(t), {}, {}, {}};
  std::set<int> closed;
  for (auto j : pivots) {
    out.pivot_indices.push_back(gaps[j].index);
    closed.insert(gaps[j].gamma);
  }
  for (const auto& g : gaps) {
    if (closed.count(g.gamma)) out.closed.push_back(g);
  }
  out.semigroup = close_gaps(hpq(t), closed);
  out.dh = dh_determinant(t, nodes, out.closed);
  return out;
}

std::optional<std::vector<std::size_t>> select_nodes_for(const TypePQ& t, const NodeSet& nodes,
                                                         const NumericalSemigroup& h, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  const auto closed = closed_gaps(t, h);
  const std::size_t l = closed.size();
  if (l == 0) return std::vector<std::size_t>{};
  if (nodes.size() < l) return std::nullopt;
  std::vector<std::size_t> rows(nodes.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<std::size_t> chosen;
  if (const auto e = exact_gap_matrix(t, nodes)) {
    Matrix<Rational> a;
    for (const auto& row : *e) {
      a.emplace_back();
      for (const auto& g : closed) a.back().push_back(row[static_cast<std::size_t>(g.index - 1)]);
    }
    // Row pivoting on the transpose-free elimination: each step takes the
    // first row with a nonzero entry in the current column.
    for (std::size_t k = 0; k < l; ++k) {
      std::size_t best = a.size();
      for (std::size_t i = k; i < a.size(); ++i) {
        if (a[i][k] != 0) {
          best = i;
          break;
        }
      }
      if (best == a.size()) return std::nullopt;
      std::swap(a[k], a[best]);
      std::swap(rows[k], rows[best]);
      for (std::size_t i = k + 1; i < a.size(); ++i) {
        const Rational f = a[i][k] / a[k][k];
        for (std::size_t j = k; j < l; ++j) a[i][j] -= f * a[k][j];
      }
      chosen.push_back(rows[k]);
    }
  } else {
    const auto en = gap_matrix(t, nodes);
    Matrix<ComplexReal> a;
    Real scale = 0;
    for (const auto& row : en) {
      a.emplace_back();
      for (const auto& g : closed) {
        a.back().push_back(row[static_cast<std::size_t>(g.index - 1)]);
        scale = std::max(scale, abs(a.back().back()));
      }
    }
    const Real tol_amb(tol.tol_ambiguous);
    for (std::size_t k = 0; k < l; ++k) {
      std::size_t best = k;
      Real best_mag = -1;
      for (std::size_t i = k; i < a.size(); ++i) {
        const Real m = abs(a[i][k]);
        if (m > best_mag) {
          best_mag = m;
          best = i;
        }
      }
      if (best_mag <= tol_amb * scale) return std::nullopt;
      std::swap(a[k], a[best]);
      std::swap(rows[k], rows[best]);
      for (std::size_t i = k + 1; i < a.size(); ++i) {
        const ComplexReal f = a[i][k] / a[k][k];
        for (std::size_t j = k; j < l; ++j) a[i][j] -= f * a[k][j];
      }
      chosen.push_back(rows[k]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// ---------------------------------------------------------------------------
// Lines of singular curves.

LineReport line_semigroup_check(const Curve& c1, const Curve& c2, int samples, const Tolerances& tol) {
  if (!(c1.type() == c2.type())) throw Error(ErrorKind::PreconditionFailed, "curves have different types");
  const auto& a1 = c1.exact_coeffs();
  const auto& a2 = c2.exact_coeffs();
  if (a1 == a2) throw Error(ErrorKind::PreconditionFailed, "the two curves coincide");
  if (samples < 1) throw Error(ErrorKind::PreconditionFailed, "need at least one sample");
  const TypePQ& t = c1.type();
  const auto s1 = singular_points(c1, tol);
  const auto s2 = singular_points(c2, tol);
  auto exact_points = [](const SingularLocus& s) {
    std::set<std::pair<Rational, Rational>> out;
    for (const auto* list : {&s.nodes.points, &s.others}) {
      for (const auto& p : *list) {
        if (p.is_exact()) out.emplace(*p.exact_x, *p.exact_y);
      }
    }
    return out;
  };
  const auto p1 = exact_points(s1);
  const auto p2 = exact_points(s2);
  std::optional<std::pair<Rational, Rational>> common;
  for (const auto& p : p1) {
    if (p2.count(p)) {
      common = p;
      break;
    }
  }
  if (!common) throw Error(ErrorKind::PreconditionFailed, "the curves share no singular point");

  LineReport out;
  out.common_point = *common;
  // Delta has weighted degree c pq and every weight is at least 1, so its
  // restriction to a line has degree at most c pq.
  out.proof_bound = t.c() * t.p() * t.q() + 1;
  out.delta_vanishes = true;
  out.semigroups_agree = true;
  for (int k = 0; k < samples; ++k) {
    LineMember m;
    m.s = samples == 1 ? Rational(0) : frac(k, samples - 1);
    std::vector<Rational> a(a1.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (1 - m.s) * a1[i] + m.s * a2[i];
    m.delta = delta_at(t, a);
    out.delta_vanishes = out.delta_vanishes && m.delta == 0;
    const Curve member = Curve::exact(t, a);
    const auto loc = singular_points(member, tol);
    m.nodes = static_cast<int>(loc.nodes.size());
    m.nodal = loc.others.empty();
    if (m.nodal) {
      m.semigroup = node_semigroup(member, loc.nodes, tol).semigroup;
      if (!out.common_semigroup) {
        out.common_semigroup = m.semigroup;
      } else if (!(*out.common_semigroup == *m.semigroup)) {
        out.semigroups_agree = false;
      }
    }
    out.members.push_back(std::move(m));
  }
  out.identically_zero = out.delta_vanishes && samples >= out.proof_bound;
  if (!out.common_semigroup) out.semigroups_agree = false;
  return out;
}

}  // namespace wsg
