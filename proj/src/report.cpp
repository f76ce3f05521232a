#include "wsg/report.hpp"

#include <algorithm>
#include <sstream>

namespace wsg {

void RunConfig::sync() {
  simplify.seed = seed;
  membership.seed = seed;
  membership.groebner = tol.groebner;
}

Json RunConfig::to_json() const {
  Json j;
  j["precision_bits"] = tol.precision_bits;
  j["seed"] = seed;
  Json t;
  {
    PrecisionScope scope(tol.precision_bits);
    t["tol_sing"] = format_real(tol.sing(), 6);
  }
  t["tol_node"] = tol.tol_node;
  t["tol_sep"] = tol.tol_sep;
  t["tol_rank"] = tol.tol_rank;
  t["tol_ambiguous"] = tol.tol_ambiguous;
  j["tolerances"] = t;
  j["groebner"] = {{"max_pairs", tol.groebner.max_pairs},
                   {"max_degree", tol.groebner.max_degree},
                   {"timeout_secs", tol.groebner.timeout_secs}};
  j["simplify"] = {{"eps", simplify.eps},
                   {"delta", simplify.delta},
                   {"max_retries", simplify.max_retries},
                   {"max_iterations", simplify.max_iterations}};
  j["membership"] = {{"max_l", membership.max_l},
                     {"max_variables", membership.max_variables},
                     {"max_minors", membership.max_minors}};
  j["format"] = format == ReportFormat::Json ? "json" : "text";
  return j;
}

Json make_report(const std::string& command, const RunConfig& cfg, Json result) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["config"] = cfg.to_json();
  j["result"] = std::move(result);
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat(const Json& v) {
  return std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
}

void render_text(const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const Json& e = it.value();
      if (!e.is_structured()) {
        out << pad << it.key() << ": " << scalar_text(e) << "\n";
      } else if (e.is_array() && is_flat(e)) {
        out << pad << it.key() << ": [";
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? ", " : "") << scalar_text(e[i]);
        out << "]\n";
      } else if (e.empty()) {
        out << pad << it.key() << ": " << (e.is_array() ? "[]" : "{}") << "\n";
      } else {
        out << pad << it.key() << ":\n";
        render_text(e, indent + 2, out);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_object()) {
        std::ostringstream inner;
        render_text(e, indent + 2, inner);
        std::string s = inner.str();
        s.replace(static_cast<std::size_t>(indent), 2, "- ");
        out << s;
      } else {
        out << pad << "- " << (e.is_structured() ? e.dump() : scalar_text(e)) << "\n";
      }
    }
  } else {
    out << pad << scalar_text(v) << "\n";
  }
}

std::string gaps_text(const std::vector<GapDescriptor>& gaps) {
  std::string s;
  for (const auto& g : gaps) s += (s.empty() ? "" : ",") + std::to_string(g.gamma);
  return "{" + s + "}";
}

Json gap_list(const std::vector<GapDescriptor>& gaps) {
  Json a = Json::array();
  for (const auto& g : gaps) a.push_back({{"gamma", g.gamma}, {"a", g.a}, {"b", g.b}, {"index", g.index}});
  return a;
}

}  // namespace

std::string render(const Json& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report.dump(2) + "\n";
  std::ostringstream out;
  render_text(report, 0, out);
  return out.str();
}

int report_digits(unsigned precision_bits) {
  return std::max(15, static_cast<int>(digits10_for_bits(precision_bits)) - 4);
}

Json to_json(const NumericalSemigroup& h) {
  Json j;
  j["semigroup"] = h.to_string();
  j["gaps"] = h.gaps();
  j["genus"] = h.genus();
  return j;
}

Json semigroup_info(const NumericalSemigroup& h) {
  Json j = to_json(h);
  j["conductor"] = h.conductor();
  j["minimal_generators"] = h.generators();
  j["symmetric"] = h.is_symmetric();
  return j;
}

Json semigroup_info(const TypePQ& t) {
  Json j;
  j["p"] = t.p();
  j["q"] = t.q();
  j["d"] = t.d();
  j["c"] = t.c();
  j["n"] = t.n();
  Json h = semigroup_info(hpq(t));
  for (auto it = h.begin(); it != h.end(); ++it) j[it.key()] = it.value();
  j["gap_descriptors"] = gap_list(gap_descriptors(t));
  return j;
}

Json to_json(const SingularPoint& p, int digits) {
  Json j;
  if (p.is_exact()) {
    j["x"] = to_string(*p.exact_x);
    j["y"] = to_string(*p.exact_y);
    j["hessian"] = to_string(*p.exact_hessian);
    j["exact"] = true;
  } else {
    j["x"] = format_complex(p.x, digits);
    j["y"] = format_complex(p.y, digits);
    j["hessian"] = format_complex(p.hessian, digits);
    j["residual"] = format_real(p.residual, 6);
    j["exact"] = false;
  }
  j["node"] = p.is_node;
  return j;
}

Json to_json(const NodeSet& nodes, int digits) {
  Json a = Json::array();
  for (const auto& p : nodes.points) a.push_back(to_json(p, digits));
  return a;
}

Json to_json(const SingularLocus& locus, int digits) {
  Json j;
  j["method"] = locus.method;
  j["certified"] = locus.certified;
  if (locus.critical_points >= 0) j["critical_points"] = locus.critical_points;
  j["node_count"] = locus.nodes.size();
  j["nodes"] = to_json(locus.nodes, digits);
  Json others = Json::array();
  for (const auto& p : locus.others) others.push_back(to_json(p, digits));
  j["other_singular_points"] = others;
  return j;
}

Json to_json(const DhValue& v, int digits) {
  if (v.exact) return to_string(*v.exact);
  return format_complex(v.value, digits);
}

Json to_json(const NodeSemigroup& ns, int digits) {
  Json j = to_json(ns.semigroup);
  j["closed_gaps"] = gaps_text(ns.closed);
  j["pivot_indices"] = ns.pivot_indices;
  j["D_H"] = to_json(ns.dh, digits);
  return j;
}

Json to_json(const SimplifyResult& r, int digits) {
  Json j;
  j["keep"] = r.keep;
  j["step"] = format_real(r.step, 6);
  j["distance"] = format_real(r.distance, 6);
  j["max_node_drift"] = format_real(r.max_drift, 6);
  j["gauss_newton_iterations"] = r.iterations;
  j["step_halvings"] = r.retries;
  j["kept_nodes"] = to_json(r.kept_nodes, digits);
  Json del = Json::array();
  for (const auto& d : r.deleted_checks) {
    del.push_back({{"node", d.node},
                   {"critical_x", format_real(d.critical_x, digits)},
                   {"critical_y", format_real(d.critical_y, digits)},
                   {"relative_value", format_real(d.value, 6)},
                   {"branch_value", format_real(d.branch_value, 6)}});
  }
  j["deleted_nodes"] = del;
  j["global_check"] = r.global_check;
  j["curve"] = curve_to_json(r.beta);
  return j;
}

Json to_json(const PipelineResult& r, int digits) {
  Json j;
  j["p"] = r.type.p();
  j["q"] = r.type.q();
  j["l"] = r.l;
  j["target"] = r.target.to_string();
  j["selected_nodes"] = r.selected;
  j["D_H"] = to_json(r.dh, digits);
  j["result"] = to_json(r.result, digits);
  j["matches"] = r.matches;
  j["simplify"] = to_json(r.simplified, digits);
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["outcome"] = std::string(to_string(v.outcome));
  j["minors_tested"] = v.minors_tested;
  j["minors_total"] = v.minors_total;
  if (v.witness) {
    j["witness"] = {{"ordinal", v.witness->ordinal},
                    {"rows", v.witness->minor.rows},
                    {"cols", v.witness->minor.cols},
                    {"minor_terms", v.witness->minor_terms},
                    {"minor_degree", v.witness->minor_degree}};
  }
  j["reason"] = v.reason;
  return j;
}

Json to_json(const CrossCheck& c) {
  Json j;
  j["passed"] = c.passed;
  j["failures"] = c.failures;
  return j;
}

Json to_json(const LineReport& r) {
  Json j;
  j["common_point"] = {to_string(r.common_point.first), to_string(r.common_point.second)};
  j["samples"] = r.members.size();
  j["proof_bound"] = r.proof_bound;
  j["delta_vanishes_at_samples"] = r.delta_vanishes;
  j["delta_identically_zero_on_line"] = r.identically_zero;
  j["semigroups_agree"] = r.semigroups_agree;
  if (r.common_semigroup) j["common_semigroup"] = r.common_semigroup->to_string();
  Json members = Json::array();
  for (const auto& m : r.members) {
    Json e{{"s", to_string(m.s)}, {"delta", to_string(m.delta)}, {"nodal", m.nodal}, {"nodes", m.nodes}};
    if (m.semigroup) e["semigroup"] = m.semigroup->to_string();
    members.push_back(std::move(e));
  }
  j["members"] = members;
  return j;
}

}  // namespace wsg
