// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "wsg/fitting.hpp"

using namespace wsg;

namespace {

using Alpha = std::vector<Rational>;

struct Check {
  bool pass = true;
  std::string detail;
};

Rational power(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Alpha random_alpha(const TypePQ& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  Alpha a;
  for (int i = 0; i < t.n(); ++i) a.push_back(frac(num(rng), den(rng)));
  return a;
}

// Adjusts A[0,0], A[1,0], A[0,1] so that F, F_X, F_Y vanish at (x, y).
void force_singular(const TypePQ& t, Alpha& a, const Rational& x, const Rational& y) {
  const auto exps = coefficient_exponents(t);
  std::size_t i00 = 0, i10 = 0, i01 = 0;
  Rational f = power(y, t.p()) - power(x, t.q());
  Rational fx = -Rational(t.q()) * power(x, t.q() - 1);
  Rational fy = Rational(t.p()) * power(y, t.p() - 1);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const auto [nu, mu] = exps[i];
    if (nu == 0 && mu == 0) { i00 = i; continue; }
    if (nu == 1 && mu == 0) { i10 = i; continue; }
    if (nu == 0 && mu == 1) { i01 = i; continue; }
    f += a[i] * power(x, nu) * power(y, mu);
    if (nu > 0) fx += a[i] * nu * power(x, nu - 1) * power(y, mu);
    if (mu > 0) fy += a[i] * mu * power(x, nu) * power(y, mu - 1);
  }
  a[i10] = -fx;
  a[i01] = -fy;
  a[i00] = -(f + a[i10] * x + a[i01] * y);
}

struct TestCurve {
  TypePQ t;
  Alpha a;
};

// Random curves, half of them forced singular at a random rational point,
// plus the smooth, nodal and cuspidal cubics.
std::vector<TestCurve> curve_set(std::uint64_t seed, int per_type) {
  std::vector<TestCurve> out;
  const TypePQ t23(2, 3);
  out.push_back({t23, coefficient_vector(t23, {{{0, 0}, Rational(1)}})});
  out.push_back({t23, coefficient_vector(t23, {{{2, 0}, Rational(-1)}})});
  out.push_back({t23, coefficient_vector(t23, {})});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pt(-3, 3);
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}}) {
    const TypePQ t(p, q);
    for (int k = 0; k < per_type; ++k) {
      Alpha a = random_alpha(t, rng);
      if (k % 2) force_singular(t, a, frac(pt(rng), 2), frac(pt(rng), 2));
      out.push_back({t, a});
    }
  }
  return out;
}

Check criterion1() {
  Check o;
  int types = 0;
  for (int p = 2; p <= 12; ++p) {
    for (int q = p + 1; q <= 12; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++types;
      const TypePQ t(p, q);
      const auto h = hpq(t);
      const int c = (p - 1) * (q - 1);
      bool ok = static_cast<int>(h.gaps().size()) == c / 2 && h.conductor() == c && h.is_symmetric();
      for (const auto& g : gap_descriptors(t)) ok = ok && g.gamma == c - 1 - (g.a * p + g.b * q) && !h.contains(g.gamma);
      if (!ok) {
        o.pass = false;
        o.detail += " (" + std::to_string(p) + "," + std::to_string(q) + ")";
      }
    }
  }
  o.detail = std::to_string(types) + " types" + (o.pass ? "" : ", failing:" + o.detail);
  return o;
}

Check criterion2(const std::vector<TestCurve>& curves, std::vector<int>& lengths) {
  Check o;
  int mismatches = 0, singular = 0;
  lengths.clear();
  for (const auto& tc : curves) {
    const int len = singularity_length(tc.t, tc.a);
    lengths.push_back(len);
    singular += len >= 1;
    if ((delta_at(tc.t, tc.a) == 0) != (len >= 1)) ++mismatches;
  }
  o.pass = mismatches == 0 && singular > 0 && singular < static_cast<int>(curves.size());
  o.detail = std::to_string(curves.size()) + " curves, " + std::to_string(singular) + " singular, " +
             std::to_string(mismatches) + " mismatches";
  return o;
}

Check criterion3(const std::vector<TestCurve>& curves, const std::vector<int>& lengths) {
  Check o;
  int mismatches = 0, checks = 0, max_len = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& tc = curves[i];
    max_len = std::max(max_len, lengths[i]);
    for (int l = 0; l <= tc.t.c(); ++l) {
      ++checks;
      if (fitting_minor_nonzero_at(tc.t, l, tc.a) != (lengths[i] <= l)) ++mismatches;
    }
  }
  o.pass = mismatches == 0;
  o.detail = std::to_string(checks) + " (curve, l) pairs, max length " + std::to_string(max_len) + ", " +
             std::to_string(mismatches) + " mismatches";
  return o;
}

Check criterion4() {
  Check o;
  std::mt19937_64 rng(4);
  std::ostringstream detail;
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}}) {
    const TypePQ t(p, q);
    const SparsePoly d = delta(t);
    const auto wd = weighted_degree(d, WeightedGrading::of(*d.table()));
    const int expected = t.c() * p * q;
    bool ok = wd.homogeneous && wd.degree == expected;
    const auto exps = coefficient_exponents(t);
    for (int trial = 0; trial < 5; ++trial) {
      const Alpha a = random_alpha(t, rng);
      const Rational lambda = frac(trial + 2, trial + 3);
      Alpha scaled = a;
      std::map<std::string, Rational> va, vs;
      for (std::size_t i = 0; i < a.size(); ++i) {
        scaled[i] *= power(lambda, p * q - exps[i].first * p - exps[i].second * q);
        va[d.table()->name(i)] = a[i];
        vs[d.table()->name(i)] = scaled[i];
      }
      const Rational base = delta_at(t, a);
      const Rational factor = power(lambda, expected);
      ok = ok && delta_at(t, scaled) == factor * base;
      const auto ea = evaluate(d, va).terms();
      const auto es = evaluate(d, vs).terms();
      const Rational sa = ea.empty() ? Rational(0) : ea[0].second;
      const Rational ss = es.empty() ? Rational(0) : es[0].second;
      ok = ok && sa == base && ss == factor * base;
    }
    detail << "(" << p << "," << q << ") degree " << wd.degree << " terms " << d.terms().size() << "; ";
    o.pass = o.pass && ok;
  }
  o.detail = detail.str() + "5 scalings each";
  return o;
}

Check criterion5() {
  Check o;
  std::ostringstream detail;
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}, {3, 5}, {4, 5}}) {
    const TypePQ t(p, q);
    const Curve c = one_node_curve(t, frac(1, 2), Rational(-1), Rational(3));
    const auto loc = singular_points(c);
    const auto ns = node_semigroup(c, loc.nodes);
    const auto want = NumericalSemigroup::from_generators({p, q, t.c() - 1});
    const bool ok = loc.others.empty() && loc.nodes.size() == 1 && ns.semigroup == want;
    o.pass = o.pass && ok;
    detail << "(" << p << "," << q << ") " << ns.semigroup.to_string() << (ok ? "" : " WRONG") << "; ";
  }
  o.detail = detail.str();
  return o;
}

Check criterion6() {
  Check o;
  Tolerances tol;
  tol.precision_bits = 128;
  std::ostringstream detail;
  for (auto [p, q] : {std::pair{2, 3}, {3, 4}, {3, 5}, {2, 7}}) {
    const TypePQ t(p, q);
    const auto lc = lissajous_curve(t, tol);
    const auto loc = singular_points(lc.curve, tol);
    PrecisionScope scope(tol.precision_bits);
    Real worst = 0;
    for (const auto& pt : loc.nodes.points) worst = std::max(worst, pt.residual);
    const auto ns = node_semigroup(lc.curve, loc.nodes, tol);
    const bool ok = static_cast<int>(loc.nodes.size()) == t.d() && loc.others.empty() && loc.certified &&
                    ns.semigroup == parse_semigroup("N") && worst <= tol.sing();
    o.pass = o.pass && ok;
    detail << "(" << p << "," << q << ") " << loc.nodes.size() << "/" << t.d() << " nodes, residual "
           << format_real(worst, 3) << "; ";
  }
  o.detail = detail.str() + "tol_sing " + [&] {
    PrecisionScope scope(tol.precision_bits);
    return format_real(tol.sing(), 3);
  }();
  return o;
}

struct PipelineRun {
  TypePQ t;
  NumericalSemigroup target;
  SimplifyResult simplified;
};

Check criterion7(std::vector<PipelineRun>& runs) {
  Check o;
  int count = 0;
  for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
    const TypePQ t(p, q);
    for (int l = 0; l <= t.d(); ++l) {
      ++count;
      try {
        const auto r = greatest_gaps_pipeline(t, l);
        const bool ok = r.result.semigroup == greatest_gaps_closure(t, l) && r.result.semigroup.genus() == t.d() - l;
        if (!ok) {
          o.pass = false;
          o.detail += " (" + std::to_string(p) + "," + std::to_string(q) + ",l=" + std::to_string(l) + ")";
        }
        runs.push_back({t, r.target, r.simplified});
      } catch (const Error& e) {
        o.pass = false;
        o.detail += " (" + std::to_string(p) + "," + std::to_string(q) + ",l=" + std::to_string(l) + ": " + e.what() + ")";
      }
    }
  }
  o.detail = std::to_string(count) + " (type, l) cases" + (o.pass ? "" : ", failing:" + o.detail);
  return o;
}

Check criterion8(const std::vector<PipelineRun>& runs) {
  Check o;
  const auto start = std::chrono::steady_clock::now();
  const auto v1 = decide(build_instance(TypePQ(2, 3), parse_semigroup("N")));
  const double v1_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto v2 = decide(build_instance(TypePQ(2, 5), close_gaps(hpq(TypePQ(2, 5)), {3})));
  int passed = 0;
  std::string failures;
  for (const auto& r : runs) {
    const auto cc = cross_validate(build_instance(r.t, r.target), r.simplified.beta, r.simplified.kept_nodes);
    if (cc.passed) {
      ++passed;
    } else {
      failures += " " + r.target.to_string();
    }
  }
  o.pass = v1.outcome == wsg::Outcome::IsWeierstrass && v1_secs < 120 && v2.outcome == wsg::Outcome::IsWeierstrass &&
           passed == static_cast<int>(runs.size());
  o.detail = "(2,3) N: " + std::string(to_string(v1.outcome)) + ", (2,5) <2,3>: " + std::string(to_string(v2.outcome)) +
             ", cross-validated " + std::to_string(passed) + "/" + std::to_string(runs.size()) + failures;
  return o;
}

Check criterion9() {
  Check o;
  const TypePQ t(2, 3);
  const auto c1 = Curve::exact(t, std::map<std::pair<int, int>, Rational>{{{2, 0}, Rational(-1)}});
  const auto c2 = Curve::exact(t, std::map<std::pair<int, int>, Rational>{{{1, 1}, Rational(1)}});
  const auto r = line_semigroup_check(c1, c2, 25);
  int nodal = 0;
  for (const auto& m : r.members) nodal += m.nodal;
  o.pass = r.members.size() >= 25 && r.delta_vanishes && r.semigroups_agree && nodal > 0 && r.common_semigroup &&
           *r.common_semigroup == parse_semigroup("N");
  o.detail = std::to_string(r.members.size()) + " samples, " + std::to_string(nodal) + " nodal, delta " +
             (r.delta_vanishes ? "vanishes" : "does not vanish") + ", common semigroup " +
             (r.common_semigroup ? r.common_semigroup->to_string() : "none");
  return o;
}

Check criterion10() {
  Check o;
  RunConfig cfg;
  cfg.seed = 2024;
  cfg.sync();
  std::vector<std::function<Json()>> runs{
      [&] { return cli::run_pipeline(cfg, TypePQ(3, 5), 2, std::nullopt, std::nullopt); },
      [&] { return cli::run_pipeline(cfg, TypePQ(3, 4), std::nullopt, std::string("<3,4,5>"), std::nullopt); },
      [&] { return cli::run_lissajous(cfg, TypePQ(2, 7), std::nullopt); },
      [&] { return cli::run_decide(cfg, TypePQ(2, 5), "<2,3>"); },
  };
  int same = 0;
  for (const auto& run : runs) {
    const Json a = run();
    const Json b = run();
    same += render(a, ReportFormat::Json) == render(b, ReportFormat::Json) &&
            render(a, ReportFormat::Text) == render(b, ReportFormat::Text);
  }
  o.pass = same == static_cast<int>(runs.size());
  o.detail = std::to_string(same) + "/" + std::to_string(runs.size()) + " reports byte-identical (seed 2024)";
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const std::string& name, double budget, const std::function<Check()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Check o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget > 0 && secs >= budget) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(budget)) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s %2d %-28s %9.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  };

  std::vector<TestCurve> curves;
  std::vector<int> lengths;
  std::vector<PipelineRun> runs;
  report(1, "semigroup suite", 1, criterion1);
  report(2, "discriminant oracle", 120, [&] {
    curves = curve_set(2, 200);
    return criterion2(curves, lengths);
  });
  report(3, "fitting ideals", 0, [&] { return criterion3(curves, lengths); });
  report(4, "scaling law", 0, criterion4);
  report(5, "one-node curves", 10, criterion5);
  report(6, "lissajous nodes", 0, criterion6);
  report(7, "greatest-gaps pipeline", 300, [&] { return criterion7(runs); });
  report(8, "criterion engine", 0, [&] { return criterion8(runs); });
  report(9, "line property", 0, criterion9);
  report(10, "determinism", 0, criterion10);
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
