#pragma once

// Run configuration and deterministic report serialization. Reports are JSON
// documents with schema "wsg-report/1"; the text format is a line-oriented
// rendering of the same document.

#include <cstdint>
#include <string>

#include "wsg/curve_io.hpp"
#include "wsg/curves.hpp"
#include "wsg/membership.hpp"
#include "wsg/simplify.hpp"

namespace wsg {

enum class ReportFormat { Text, Json };

struct RunConfig {
  Tolerances tol;
  std::uint64_t seed = 1;
  SimplifyOptions simplify;  // its seed is overwritten by `seed`
  MembershipBudget membership;
  ReportFormat format = ReportFormat::Text;
  bool timings = false;

  /// Propagates precision, seed and Groebner budget into the sub-configs.
  void sync();
  Json to_json() const;
};

inline constexpr const char* kReportSchema = "wsg-report/1";

/// {"schema", "command", "config", "result"}.
Json make_report(const std::string& command, const RunConfig& cfg, Json result);
std::string render(const Json& report, ReportFormat format);

/// Significant decimal digits used for reals at a given precision.
int report_digits(unsigned precision_bits);

Json to_json(const NumericalSemigroup& h);
Json semigroup_info(const TypePQ& t);
Json semigroup_info(const NumericalSemigroup& h);
Json to_json(const SingularPoint& p, int digits);
Json to_json(const NodeSet& nodes, int digits);
Json to_json(const SingularLocus& locus, int digits);
Json to_json(const NodeSemigroup& ns, int digits);
Json to_json(const SimplifyResult& r, int digits);
Json to_json(const PipelineResult& r, int digits);
Json to_json(const Verdict& v);
Json to_json(const CrossCheck& c);
Json to_json(const LineReport& r);
Json to_json(const DhValue& v, int digits);

}  // namespace wsg
