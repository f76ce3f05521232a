#include "wsg/simplify.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace wsg {

std::vector<BranchNormal> branch_normals(const Curve& c, const NodeSet& nodes, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  const auto exps = coefficient_exponents(c.type());
  std::vector<BranchNormal> out;
  Matrix<ComplexReal> v;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    BranchNormal bn{i, {}};
    for (const auto& [nu, mu] : exps) {
      ComplexReal m(Real(1));
      for (int k = 0; k < nu; ++k) m *= nodes.points[i].x;
      for (int k = 0; k < mu; ++k) m *= nodes.points[i].y;
      bn.v.push_back(m);
    }
    v.push_back(bn.v);
    out.push_back(std::move(bn));
  }
  if (!v.empty()) {
    const auto r = numeric_rank(v, Real(tol.tol_rank), Real(tol.tol_ambiguous));
    if (r.rank != v.size() || r.ambiguous) {
      throw Error(ErrorKind::RankDeficient, "branch normals of " + std::to_string(v.size()) + " nodes have rank " +
                                                std::to_string(r.rank) + (r.ambiguous ? " (ambiguous pivot)" : ""));
    }
  }
  return out;
}

namespace {

Real norm2(const std::vector<Real>& v) {
  Real s = 0;
  for (const auto& x : v) s += x * x;
  return Real(sqrt(s));
}

Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Uniform in [1, 2) with a random sign, from raw generator bits so the
// sequence does not depend on the standard library's distributions.
Real random_target(std::mt19937_64& rng) {
  const std::uint64_t bits = rng();
  const double u = 1.0 + static_cast<double>(bits >> 11) * 0x1.0p-53;
  return Real((bits & 1) ? -u : u);
}

struct KeptSystem {
  const TypePQ& t;
  std::vector<std::pair<int, int>> exps;

  // Residuals F, F_X, F_Y at every kept node; z = (beta, x_1, y_1, ...).
  std::vector<Real> residual(const std::vector<Real>& z, std::size_t n, std::size_t k) const {
    const CurveEvaluator ev(t, {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)});
    std::vector<Real> r;
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = ev.jet(z[n + 2 * i], z[n + 2 * i + 1]);
      r.push_back(j.f);
      r.push_back(j.fx);
      r.push_back(j.fy);
    }
    return r;
  }

  Matrix<Real> jacobian(const std::vector<Real>& z, std::size_t n, std::size_t k) const {
    const CurveEvaluator ev(t, {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)});
    Matrix<Real> jm(3 * k, std::vector<Real>(n + 2 * k, Real(0)));
    for (std::size_t i = 0; i < k; ++i) {
      const Real& x = z[n + 2 * i];
      const Real& y = z[n + 2 * i + 1];
      const auto j = ev.jet(x, y);
      for (std::size_t a = 0; a < n; ++a) {
        const auto [nu, mu] = exps[a];
        jm[3 * i][a] = Real(pow(x, nu)) * Real(pow(y, mu));
        if (nu > 0) jm[3 * i + 1][a] = nu * Real(pow(x, nu - 1)) * Real(pow(y, mu));
        if (mu > 0) jm[3 * i + 2][a] = mu * Real(pow(x, nu)) * Real(pow(y, mu - 1));
      }
      const std::size_t cx = n + 2 * i;
      jm[3 * i][cx] = j.fx;
      jm[3 * i][cx + 1] = j.fy;
      jm[3 * i + 1][cx] = j.fxx;
      jm[3 * i + 1][cx + 1] = j.fxy;
      jm[3 * i + 2][cx] = j.fxy;
      jm[3 * i + 2][cx + 1] = j.fyy;
    }
    return jm;
  }

  // Largest residual relative to the term scale at its node.
  Real relative(const std::vector<Real>& z, const std::vector<Real>& r, std::size_t n, std::size_t k) const {
    const CurveEvaluator ev(t, {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)});
    Real worst = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const Real s = ev.scale(ComplexReal(z[n + 2 * i]), ComplexReal(z[n + 2 * i + 1]));
      for (std::size_t e = 0; e < 3; ++e) worst = std::max(worst, Real(abs(r[3 * i + e]) / s));
    }
    return worst;
  }
};

struct Attempt {
  std::vector<Real> beta;
  std::vector<std::pair<Real, Real>> kept;
  int iterations = 0;
};

// Gauss-Newton with minimal-norm steps and step halving on the residual.
Attempt gauss_newton(const KeptSystem& sys, std::vector<Real> z, std::size_t n, std::size_t k, const Real& target,
                     int max_iterations) {
  Attempt out;
  auto r = sys.residual(z, n, k);
  Real res = norm2(r);
  int it = 0;
  for (; it < max_iterations && k > 0; ++it) {
    if (sys.relative(z, r, n, k) <= target) break;
    const auto step = min_norm_solve(sys.jacobian(z, n, k), r);
    Real damping = 1;
    bool improved = false;
    for (int h = 0; h < 40; ++h) {
      std::vector<Real> trial = z;
      for (std::size_t i = 0; i < z.size(); ++i) trial[i] -= damping * step[i];
      auto rt = sys.residual(trial, n, k);
      const Real rn = norm2(rt);
      if (rn < res) {
        z = std::move(trial);
        r = std::move(rt);
        res = rn;
        improved = true;
        break;
      }
      damping /= 2;
    }
    if (!improved) break;
  }
  if (k > 0 && sys.relative(z, r, n, k) > target) {
    throw Error(ErrorKind::NewtonDiverged, "Gauss-Newton stalled at relative residual " +
                                               format_real(sys.relative(z, r, n, k), 6) + " after " +
                                               std::to_string(it) + " iterations");
  }
  out.beta.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < k; ++i) out.kept.emplace_back(z[n + 2 * i], z[n + 2 * i + 1]);
  out.iterations = it;
  return out;
}

}  // namespace

SimplifyResult simplify(const Curve& c, const NodeSet& nodes, const std::vector<std::size_t>& keep,
                        const SimplifyOptions& opt, const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  const TypePQ& t = c.type();
  const std::set<std::size_t> keep_set(keep.begin(), keep.end());
  if (keep_set.size() != keep.size()) throw Error(ErrorKind::PreconditionFailed, "keep lists a node twice");
  for (auto i : keep) {
    if (i >= nodes.size()) throw Error(ErrorKind::PreconditionFailed, "keep index " + std::to_string(i) + " out of range");
  }
  if (!(opt.eps > 0) || !(opt.delta > 0)) throw Error(ErrorKind::PreconditionFailed, "eps and delta must be positive");
  const Real sep(tol.tol_sep);
  for (const auto& pt : nodes.points) {
    if (!pt.is_real(sep)) throw Error(ErrorKind::PreconditionFailed, "only real nodes can be simplified");
  }

  if (keep.size() == nodes.size()) {
    SimplifyResult id{c, keep, {nodes.exactness, {}}, {}, {}, 0, 0, 0, 0, 0, "identity: all nodes kept"};
    for (auto i : keep) id.kept_nodes.points.push_back(nodes.points[i]);
    return id;
  }

  const auto normals = branch_normals(c, nodes, tol);
  const auto n = static_cast<std::size_t>(t.n());
  const std::vector<Real> alpha = c.real_coeffs();
  std::vector<std::vector<Real>> vr;  // real parts; the nodes are real
  for (const auto& bn : normals) {
    vr.emplace_back();
    for (const auto& e : bn.v) vr.back().push_back(e.re);
  }
  std::vector<std::size_t> deleted;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep_set.count(i)) deleted.push_back(i);
  }

  // (i) Direction: <v_i, t> = 0 on kept nodes, a random value in +-[1,2) on
  // deleted ones; minimal-norm solution, then normalized.
  std::mt19937_64 rng(opt.seed);
  std::vector<Real> dir;
  for (int tries = 0; tries < 16 && dir.empty(); ++tries) {
    std::vector<Real> rhs(nodes.size(), Real(0));
    for (auto j : deleted) rhs[j] = random_target(rng);
    std::vector<Real> cand;
    try {
      cand = min_norm_solve(vr, rhs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient) throw;
      break;
    }
    const Real len = norm2(cand);
    if (len == 0) continue;
    for (auto& x : cand) x /= len;
    Real margin = 1;
    for (auto j : deleted) margin = std::min(margin, Real(abs(dot(vr[j], cand)) / norm2(vr[j])));
    if (margin > Real(1e-8)) dir = std::move(cand);
  }
  if (dir.empty()) throw Error(ErrorKind::NoSeparatingDirection, "no direction separates the deleted nodes");

  const KeptSystem sys{t, coefficient_exponents(t)};
  const Real target = tol.sing() / 256;
  Real h = Real(opt.eps) / 2;
  std::optional<Error> last;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt, h /= 2) {
    try {
      // (ii) step and (iii) Gauss-Newton back onto the kept-node incidence.
      std::vector<Real> z;
      for (std::size_t i = 0; i < n; ++i) z.push_back(alpha[i] + h * dir[i]);
      for (auto i : keep) {
        z.push_back(nodes.points[i].x.re);
        z.push_back(nodes.points[i].y.re);
      }
      const Attempt a = gauss_newton(sys, z, n, keep.size(), target, opt.max_iterations);

      // (iv) Kept nodes, drift and distance.
      const CurveEvaluator ev(t, a.beta);
      NodeSet kept{Exactness::Approx, {}};
      Real drift = 0;
      for (std::size_t i = 0; i < keep.size(); ++i) {
        auto sp = classify_point(ev, ComplexReal(a.kept[i].first), ComplexReal(a.kept[i].second), tol);
        if (sp.residual > tol.sing() || !sp.is_node) {
          throw Error(ErrorKind::NewtonDiverged, "kept node " + std::to_string(keep[i]) + " did not verify");
        }
        drift = std::max(drift, Real(abs(sp.x - nodes.points[keep[i]].x) + abs(sp.y - nodes.points[keep[i]].y)));
        kept.points.push_back(std::move(sp));
      }
      std::vector<Real> diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = a.beta[i] - alpha[i];
      const Real dist = norm2(diff);
      if (drift >= Real(opt.delta) || dist >= Real(opt.eps)) {
        throw Error(ErrorKind::NewtonDiverged, "step left the eps/delta neighbourhood");
      }

      // (v) Deleted nodes: the nearby critical point is no longer on the
      // curve and the first-order branch value is nonzero.
      std::vector<DeletedNodeCheck> checks;
      for (auto j : deleted) {
        DeletedNodeCheck chk;
        chk.node = j;
        const auto cp = polish_critical_point(ev, nodes.points[j].x, nodes.points[j].y, tol.precision_bits);
        if (!cp) throw Error(ErrorKind::DeletedNodePersists, "no critical point near deleted node " + std::to_string(j));
        chk.critical_x = cp->first.re;
        chk.critical_y = cp->second.re;
        const auto jet = ev.jet(cp->first, cp->second);
        chk.value = abs(jet.f) / ev.scale(cp->first, cp->second);
        chk.branch_value = dot(vr[j], diff);
        if (chk.value <= tol.sing() || abs(chk.branch_value) <= tol.sing()) {
          throw Error(ErrorKind::DeletedNodePersists, "deleted node " + std::to_string(j) + " is still singular");
        }
        checks.push_back(std::move(chk));
      }

      Curve beta = Curve::approx(t, a.beta, tol.precision_bits);
      std::string global;
      try {
        const auto loc = singular_points(beta, tol);
        if (loc.nodes.size() != keep.size() || !loc.others.empty()) {
          throw Error(ErrorKind::DeletedNodePersists,
                      "global solve found " + std::to_string(loc.nodes.size()) + " nodes and " +
                          std::to_string(loc.others.size()) + " other singular points");
        }
        global = "passed: " + std::to_string(loc.critical_points) + " simple critical points, " +
                 std::to_string(loc.nodes.size()) + " nodes, no other singular points";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SolverIncomplete) throw;
        global = std::string("skipped: ") + e.what();
      }
      return SimplifyResult{std::move(beta), keep, std::move(kept), std::move(checks), dir, h, dist, drift,
                            a.iterations, attempt, std::move(global)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NewtonDiverged && e.kind() != ErrorKind::DeletedNodePersists) throw;
      last = e;
    }
  }
  throw *last;
}

PipelineResult semigroup_pipeline(const TypePQ& t, const NumericalSemigroup& target, const SimplifyOptions& opt,
                                  const Tolerances& tol) {
  const auto closed = closed_gaps(t, target);
  if (static_cast<int>(closed.size()) + target.genus() != t.d()) {
    throw Error(ErrorKind::IncompatibleSemigroup, target.to_string() + " is not obtained by closing gaps of <p,q>");
  }
  const int l = static_cast<int>(closed.size());
  const auto lc = lissajous_curve(t, tol);
  const auto sel = select_nodes_for(t, lc.nodes, target, tol);
  if (!sel) throw Error(ErrorKind::RankDeficient, "no " + std::to_string(l) + " Lissajous nodes with D_H != 0");
  NodeSet chosen{lc.nodes.exactness, {}};
  for (auto i : *sel) chosen.points.push_back(lc.nodes.points[i]);
  DhValue dh;
  {
    PrecisionScope scope(tol.precision_bits);
    dh = dh_determinant(t, chosen, closed);
  }
  auto simplified = simplify(lc.curve, lc.nodes, *sel, opt, tol);
  auto result = node_semigroup(simplified.beta, simplified.kept_nodes, tol);
  const bool matches = result.semigroup == target;
  return PipelineResult{t, l, target, *sel, std::move(dh), std::move(simplified), std::move(result), matches};
}

PipelineResult greatest_gaps_pipeline(const TypePQ& t, int l, const SimplifyOptions& opt, const Tolerances& tol) {
  if (l < 0 || l > t.d()) throw Error(ErrorKind::PreconditionFailed, "l must lie in [0, d]");
  auto r = semigroup_pipeline(t, greatest_gaps_closure(t, l), opt, tol);
  if (!r.matches) {
    throw Error(ErrorKind::SemigroupMismatch,
                "expected " + r.target.to_string() + ", the nodes give " + r.result.semigroup.to_string());
  }
  return r;
}

}  // namespace wsg
