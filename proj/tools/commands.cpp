#include "commands.hpp"

#include <chrono>
#include <fstream>

#include "wsg/fitting.hpp"

namespace wsg::cli {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Json finish(const std::string& command, const RunConfig& cfg, Json result, const Stopwatch& sw) {
  if (cfg.timings) result["timings"] = {{"seconds", sw.seconds()}};
  return make_report(command, cfg, std::move(result));
}

Json type_json(const TypePQ& t) { return {{"p", t.p()}, {"q", t.q()}}; }

}  // namespace

Json run_sg(const RunConfig& cfg, std::optional<TypePQ> t, const std::optional<std::string>& semigroup) {
  Stopwatch sw;
  Json r;
  if (t) r["type"] = semigroup_info(*t);
  if (semigroup) {
    const auto h = parse_semigroup(*semigroup);
    r["semigroup"] = semigroup_info(h);
    if (t) {
      Json rel;
      try {
        const auto inst = build_instance(*t, h);
        rel["compatible"] = true;
        rel["l"] = inst.l;
        Json closed = Json::array();
        for (const auto& g : inst.closed) closed.push_back(g.gamma);
        rel["closed_gaps"] = closed;
        rel["greatest_gaps_closure"] = h == greatest_gaps_closure(*t, inst.l);
        rel["determinant_conditions"] = inst.determinants.size();
        const auto pc = precondition_check(*t, h);
        rel["precondition_ok"] = pc.ok;
        rel["precondition"] = pc.message;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::IncompatibleSemigroup) throw;
        rel["compatible"] = false;
        rel["reason"] = e.what();
      }
      r["relative_to_type"] = rel;
    }
  }
  return finish("sg", cfg, r, sw);
}

Json run_generic(const RunConfig& cfg, const TypePQ& t, bool with_delta, bool print_delta) {
  Stopwatch sw;
  Json r = type_json(t);
  Json basis = Json::array();
  for (auto [nu, mu] : basis_b(t)) basis.push_back("xi^" + std::to_string(nu) + "*eta^" + std::to_string(mu));
  r["basis"] = basis;
  const auto gm = generic_relation_matrix(t);
  Json m = Json::array();
  for (const auto& row : gm.m) {
    Json jr = Json::array();
    for (const auto& e : row) jr.push_back(e.to_string());
    m.push_back(jr);
  }
  r["relation_matrix"] = m;
  if (with_delta || print_delta) {
    const SparsePoly d = delta(t);
    const auto wd = weighted_degree(d, WeightedGrading::of(*d.table()));
    Json jd;
    jd["terms"] = d.terms().size();
    jd["weighted_homogeneous"] = wd.homogeneous;
    jd["weighted_degree"] = wd.degree;
    jd["expected_degree"] = t.c() * t.p() * t.q();
    if (print_delta) jd["polynomial"] = d.to_string();
    r["delta"] = jd;
  }
  return finish("generic", cfg, r, sw);
}

Json run_analyze(const RunConfig& cfg, const Curve& c) {
  Stopwatch sw;
  const int digits = report_digits(cfg.tol.precision_bits);
  Json r;
  r["curve"] = curve_to_json(c);
  r["polynomial"] = c.to_string();
  const auto loc = singular_points(c, cfg.tol);
  r["singular_points"] = to_json(loc, digits);
  const bool nodal = loc.others.empty();
  r["nodal"] = nodal;
  if (nodal) r["node_semigroup"] = to_json(node_semigroup(c, loc.nodes, cfg.tol), digits);
  if (c.is_exact()) {
    const auto& a = c.exact_coeffs();
    r["delta"] = to_string(delta_at(c.type(), a));
    r["singularity_length"] = singularity_length(c.type(), a, cfg.tol.groebner);
    Json flags = Json::array();
    for (int l = 0; l <= c.type().c(); ++l) flags.push_back(fitting_minor_nonzero_at(c.type(), l, a));
    r["fitting_minor_nonzero"] = flags;
  }
  return finish("analyze", cfg, r, sw);
}

Json run_lissajous(const RunConfig& cfg, const TypePQ& t, const OptPath& curve_out) {
  Stopwatch sw;
  const int digits = report_digits(cfg.tol.precision_bits);
  const auto lc = lissajous_curve(t, cfg.tol);
  Json r = type_json(t);
  r["normalization"] = lc.normalization;
  r["curve"] = curve_to_json(lc.curve);
  r["polynomial"] = lc.curve.to_string();
  r["node_count"] = lc.nodes.size();
  r["nodes"] = to_json(lc.nodes, digits);
  r["node_semigroup"] = to_json(node_semigroup(lc.curve, lc.nodes, cfg.tol), digits);
  if (curve_out) write_curve_file(*curve_out, lc.curve);
  return finish("lissajous", cfg, r, sw);
}

Json run_simplify(const RunConfig& cfg, const Curve& c, const std::vector<std::size_t>& keep,
                  const OptPath& curve_out) {
  Stopwatch sw;
  const int digits = report_digits(cfg.tol.precision_bits);
  const auto loc = singular_points(c, cfg.tol);
  if (!loc.others.empty()) throw Error(ErrorKind::PreconditionFailed, "the input curve is not nodal");
  const auto res = simplify(c, loc.nodes, keep, cfg.simplify, cfg.tol);
  Json r;
  r["input_nodes"] = to_json(loc.nodes, digits);
  r["simplify"] = to_json(res, digits);
  r["node_semigroup"] = to_json(node_semigroup(res.beta, res.kept_nodes, cfg.tol), digits);
  if (curve_out) write_curve_file(*curve_out, res.beta);
  return finish("simplify", cfg, r, sw);
}

Json run_pipeline(const RunConfig& cfg, const TypePQ& t, std::optional<int> l,
                  const std::optional<std::string>& semigroup, const OptPath& curve_out) {
  Stopwatch sw;
  const int digits = report_digits(cfg.tol.precision_bits);
  const PipelineResult res = l ? greatest_gaps_pipeline(t, *l, cfg.simplify, cfg.tol)
                               : semigroup_pipeline(t, parse_semigroup(*semigroup), cfg.simplify, cfg.tol);
  Json r = to_json(res, digits);
  r["greatest_gaps"] = res.target == greatest_gaps_closure(t, res.l);
  const auto inst = build_instance(t, res.target);
  r["cross_validation"] = to_json(cross_validate(inst, res.simplified.beta, res.simplified.kept_nodes, cfg.tol));
  if (curve_out) write_curve_file(*curve_out, res.simplified.beta);
  return finish("pipeline", cfg, r, sw);
}

Json run_decide(const RunConfig& cfg, const TypePQ& t, const std::string& semigroup) {
  Stopwatch sw;
  const auto h = parse_semigroup(semigroup);
  const auto inst = build_instance(t, h);
  Json r = type_json(t);
  r["semigroup"] = h.to_string();
  r["l"] = inst.l;
  r["ideal_generators"] = inst.generators().size();
  r["determinant_conditions"] = inst.determinants.size();
  const auto pc = precondition_check(t, h);
  r["precondition_ok"] = pc.ok;
  r["precondition"] = pc.message;
  r["verdict"] = to_json(decide(inst, cfg.membership));
  return finish("decide", cfg, r, sw);
}

Json run_line_check(const RunConfig& cfg, const Curve& c1, const Curve& c2, int samples) {
  Stopwatch sw;
  Json r;
  r["curve1"] = curve_to_json(c1);
  r["curve2"] = curve_to_json(c2);
  r["line"] = to_json(line_semigroup_check(c1, c2, samples, cfg.tol));
  return finish("line-check", cfg, r, sw);
}

int exit_code_for(const Json& report) {
  const auto& r = report.at("result");
  if (r.contains("verdict") && r["verdict"].at("outcome") == "INCONCLUSIVE") return 2;
  return 0;
}

}  // namespace wsg::cli
