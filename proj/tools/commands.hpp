#pragma once

// Subcommand bodies shared by the nodalsg CLI and the acceptance runner. Each
// returns a complete report document.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wsg/report.hpp"

namespace wsg::cli {

using OptPath = std::optional<std::filesystem::path>;

Json run_sg(const RunConfig& cfg, std::optional<TypePQ> t, const std::optional<std::string>& semigroup);
Json run_generic(const RunConfig& cfg, const TypePQ& t, bool with_delta, bool print_delta);
Json run_analyze(const RunConfig& cfg, const Curve& c);
Json run_lissajous(const RunConfig& cfg, const TypePQ& t, const OptPath& curve_out);
/// Nodes are those found by singular_points, in its order.
Json run_simplify(const RunConfig& cfg, const Curve& c, const std::vector<std::size_t>& keep,
                  const OptPath& curve_out);
/// Exactly one of l and semigroup is set.
Json run_pipeline(const RunConfig& cfg, const TypePQ& t, std::optional<int> l,
                  const std::optional<std::string>& semigroup, const OptPath& curve_out);
Json run_decide(const RunConfig& cfg, const TypePQ& t, const std::string& semigroup);
Json run_line_check(const RunConfig& cfg, const Curve& c1, const Curve& c2, int samples);

/// 2 for an INCONCLUSIVE verdict, 0 otherwise.
int exit_code_for(const Json& report);

}  // namespace wsg::cli
