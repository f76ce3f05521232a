#include "wsg/membership.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "wsg/fitting.hpp"

namespace wsg {

std::vector<SparsePoly> CriterionInstance::generators() const {
  std::vector<SparsePoly> out = point_equations;
  for (const auto& d : determinants) out.push_back(d.poly);
  return out;
}

namespace {

SparsePoly point_monomial(const TablePtr& table, int i, int a, int b) {
  Monomial m;
  m.e[table->point_x(i)] = static_cast<std::uint8_t>(a);
  m.e[table->point_y(i)] = static_cast<std::uint8_t>(b);
  return SparsePoly::from_terms(table, {{m, Rational(1)}});
}

SparsePoly det_or_one(const TablePtr& table, const Matrix<SparsePoly>& m) {
  if (m.empty()) return SparsePoly::constant(table, Rational(1));
  return symbolic_determinant(m);
}

// [A00, A10, A01] > other A > points > Z. The leading terms of F, F_X, F_Y
// at the first point are then A00, A10, A01.
MonomialOrder criterion_order(const VarTable& table) {
  std::vector<std::size_t> first{table.a(0, 0), table.a(1, 0), table.a(0, 1)};
  std::vector<std::size_t> rest, points;
  for (std::size_t i = 0; i < table.coefficient_count(); ++i) {
    if (std::find(first.begin(), first.end(), i) == first.end()) rest.push_back(i);
  }
  for (int i = 1; i <= table.points(); ++i) {
    points.push_back(table.point_x(i));
    points.push_back(table.point_y(i));
  }
  std::vector<std::vector<std::size_t>> blocks{first};
  if (!rest.empty()) blocks.push_back(rest);
  if (!points.empty()) blocks.push_back(points);
  blocks.push_back({table.z()});
  return MonomialOrder::blocks(blocks);
}

}  // namespace

CriterionInstance build_instance(const TypePQ& t, const NumericalSemigroup& h) {
  if (!h.contains(t.p()) || !h.contains(t.q())) {
    throw Error(ErrorKind::IncompatibleSemigroup, h.to_string() + " does not contain p and q");
  }
  const NumericalSemigroup h0 = hpq(t);
  for (int g : h.gaps()) {
    if (h0.contains(g)) {
      throw Error(ErrorKind::IncompatibleSemigroup, std::to_string(g) + " is a gap of " + h.to_string() +
                                                        " but not of " + h0.to_string());
    }
  }
  std::vector<GapDescriptor> closed, open;
  for (const auto& g : gap_descriptors(t)) (h.contains(g.gamma) ? closed : open).push_back(g);
  const int l = static_cast<int>(closed.size());
  auto table = make_table({.type = t, .coefficients = true, .xy = false, .points = l, .z = true});

  CriterionInstance inst{t, h, l, table, closed, open, {}, {}, SparsePoly::constant(table, Rational(1)), {}};
  for (int i = 1; i <= l; ++i) {
    const std::size_t x = table->point_x(i);
    const std::size_t y = table->point_y(i);
    const SparsePoly f = generic_weierstrass(t, table, x, y);
    inst.point_equations.push_back(f);
    inst.point_equations.push_back(f.derivative(x));
    inst.point_equations.push_back(f.derivative(y));
    inst.hessians.push_back(hessian(f, x, y));
  }
  Matrix<SparsePoly> ah(static_cast<std::size_t>(l));
  for (int i = 1; i <= l; ++i) {
    for (const auto& g : closed) ah[static_cast<std::size_t>(i - 1)].push_back(point_monomial(table, i, g.a, g.b));
  }
  inst.dh = det_or_one(table, ah);

  // gamma_{j_m} < gamma_{i_k} exactly for m <= i_k - k.
  int expected = 0;
  for (std::size_t k = 1; k <= open.size(); ++k) {
    const int ik = open[k - 1].index;
    expected += ik - static_cast<int>(k);
    for (int m = 1; m <= ik - static_cast<int>(k); ++m) {
      Matrix<SparsePoly> a = ah;
      for (int i = 1; i <= l; ++i) {
        a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(m - 1)] =
            point_monomial(table, i, open[k - 1].a, open[k - 1].b);
      }
      inst.determinants.push_back({static_cast<int>(k), m, det_or_one(table, a)});
    }
  }
  if (static_cast<int>(inst.determinants.size()) != expected) {
    throw Error(ErrorKind::InternalConsistency, "D^m_k count");
  }
  return inst;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::IsWeierstrass:
      return "IS_WEIERSTRASS";
    case Outcome::NotWeierstrass:
      return "NOT_WEIERSTRASS";
    case Outcome::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Verdict decide(const CriterionInstance& inst, const MembershipBudget& budget) {
  const TypePQ& t = inst.type;
  Verdict v;
  if (inst.l == 0) {
    v.outcome = Outcome::IsWeierstrass;
    v.reason = "l = 0: smooth curves of type p,q have semigroup <p,q>";
    return v;
  }
  const auto c = static_cast<std::size_t>(t.c());
  const auto k = c - static_cast<std::size_t>(inst.l);
  v.minors_total = binomial(c, k) * binomial(c, k);
  if (inst.l > budget.max_l) {
    v.reason = "l = " + std::to_string(inst.l) + " exceeds the budget l <= " + std::to_string(budget.max_l);
    return v;
  }
  if (t.n() + 2 * inst.l > budget.max_variables) {
    v.reason = "n + 2l = " + std::to_string(t.n() + 2 * inst.l) + " exceeds the budget of " +
               std::to_string(budget.max_variables) + " variables";
    return v;
  }

  // Minor order: nonzero at a random rational point first, then the rest,
  // each group lexicographic in (rows, cols).
  std::mt19937_64 rng(budget.seed);
  std::vector<Rational> alpha;
  for (int i = 0; i < t.n(); ++i) alpha.emplace_back(static_cast<long>(rng() % 19) - 9);
  const auto ma = relation_matrix_at(t, alpha);
  const auto row_sets = subsets(c, k);
  std::vector<MinorIndex> first, second;
  for (const auto& rows : row_sets) {
    for (const auto& cols : row_sets) {
      Matrix<Rational> sub(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = ma[rows[i]][cols[j]];
      }
      (determinant(sub) != 0 ? first : second).push_back({rows, cols});
    }
  }
  first.insert(first.end(), second.begin(), second.end());

  const auto generic = generic_relation_matrix(t);
  std::vector<std::size_t> mapping(generic.table->size());
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  const Ideal ideal(inst.table, inst.generators());
  const MonomialOrder order = criterion_order(*inst.table);
  try {
    for (const auto& idx : first) {
      if (v.minors_tested >= budget.max_minors) {
        v.reason = "minor budget of " + std::to_string(budget.max_minors) + " exhausted";
        return v;
      }
      ++v.minors_tested;
      const SparsePoly h = symbolic_minor(generic.m, idx).embed(inst.table, mapping);
      std::vector<SparsePoly> factors{h};
      factors.insert(factors.end(), inst.hessians.begin(), inst.hessians.end());
      factors.push_back(inst.dh);
      if (!radical_member_product(factors, ideal, order, budget.groebner)) {
        v.outcome = Outcome::IsWeierstrass;
        v.witness = Witness{v.minors_tested, idx, h.terms().size(), h.total_degree()};
        v.reason = "h_t * prod Hess * D_H is not in the radical";
        return v;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceBudgetExceeded) throw;
    v.outcome = Outcome::Inconclusive;
    v.reason = e.what();
    return v;
  }
  v.outcome = Outcome::NotWeierstrass;
  v.reason = "all " + std::to_string(v.minors_total) + " minors lie in the radical";
  return v;
}

namespace {

// |p| at the point and the sum of |terms|.
std::pair<Real, Real> evaluate_relative(const SparsePoly& p, const std::vector<ComplexReal>& values) {
  ComplexReal acc(Real(0));
  Real scale = 0;
  for (const auto& [m, c] : p.terms()) {
    ComplexReal term(to_real(c));
    for (std::size_t v = 0; v < values.size(); ++v) {
      for (int e = 0; e < m[v]; ++e) term *= values[v];
    }
    acc += term;
    scale += abs(term);
  }
  return {abs(acc), scale};
}

}  // namespace

CrossCheck cross_validate(const CriterionInstance& inst, const Curve& curve, const NodeSet& nodes,
                          const Tolerances& tol) {
  PrecisionScope scope(tol.precision_bits);
  CrossCheck out;
  auto fail = [&](std::string s) { out.failures.push_back(std::move(s)); };
  if (!(curve.type() == inst.type)) fail("curve type differs from the instance");
  if (static_cast<int>(nodes.size()) != inst.l) {
    fail("node count " + std::to_string(nodes.size()) + " differs from l = " + std::to_string(inst.l));
  }
  if (!out.failures.empty()) return out;
  const TypePQ& t = inst.type;
  try {
    const CurveEvaluator ev(curve);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto sp = classify_point(ev, nodes.points[i].x, nodes.points[i].y, tol);
      if (sp.residual > tol.sing()) fail("node " + std::to_string(i) + ": residual above tol_sing");
      if (!sp.is_node) fail("node " + std::to_string(i) + ": Hessian below tol_node");
    }
    // Conditions (3).
    std::vector<ComplexReal> values;
    for (const auto& a : curve.real_coeffs()) values.emplace_back(a);
    for (const auto& pt : nodes.points) {
      values.push_back(pt.x);
      values.push_back(pt.y);
    }
    values.emplace_back(Real(0));  // Z
    for (const auto& d : inst.determinants) {
      const auto [value, scale] = evaluate_relative(d.poly, values);
      if (value > tol.sing() * std::max(scale, Real(1))) {
        fail("D^" + std::to_string(d.m) + "_" + std::to_string(d.k) + " does not vanish");
      }
    }
    if (!dh_determinant(t, nodes, inst.closed).nonzero(Real(tol.tol_rank))) fail("D_H vanishes");
    // Singularity length l.
    if (curve.is_exact()) {
      const int len = singularity_length(t, curve.exact_coeffs(), tol.groebner);
      if (len != inst.l) fail("singularity length " + std::to_string(len));
    } else {
      BasisReducer<Real> red(
          t, curve.real_coeffs(), [](const Rational& r) { return to_real(r); }, [](const Real& x) { return x == 0; });
      const auto r = numeric_rank(relation_matrix(red), Real(tol.tol_rank), Real(tol.tol_ambiguous));
      if (r.ambiguous || static_cast<int>(r.rank) != t.c() - inst.l) {
        fail("numeric rank of M is " + std::to_string(r.rank) + (r.ambiguous ? " (ambiguous)" : "") +
             ", expected c - l = " + std::to_string(t.c() - inst.l));
      }
    }
    const auto ns = node_semigroup(curve, nodes, tol);
    if (!(ns.semigroup == inst.h)) fail("node semigroup is " + ns.semigroup.to_string());
  } catch (const Error& e) {
    fail(e.what());
  }
  out.passed = out.failures.empty();
  return out;
}

PreconditionReport precondition_check(const TypePQ& t, const NumericalSemigroup& h) {
  const auto& gens = h.generators();
  const int largest = gens.empty() ? 0 : *std::max_element(gens.begin(), gens.end());
  if (t.p() > largest) return {true, "p = " + std::to_string(t.p()) + " exceeds every minimal generator"};
  return {false, "p = " + std::to_string(t.p()) + " is not greater than the minimal generator " +
                     std::to_string(largest) +
                     "; a negative verdict only rules out nodal curves of type p,q"};
}

}  // namespace wsg
