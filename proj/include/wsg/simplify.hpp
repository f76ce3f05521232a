#pragma once

// Simplification of nodal curves: move the coefficients a little so that a
// chosen subset of the nodes survives and the others are smoothed away, and
// the pipeline that realizes every greatest-gaps closure this way.

#include <cstdint>
#include <string>
#include <vector>

#include "wsg/curves.hpp"

namespace wsg {

/// v_i[k] = x_i^nu y_i^mu over the coefficient exponents in A-order.
struct BranchNormal {
  std::size_t node = 0;
  std::vector<ComplexReal> v;
};

/// Throws RankDeficient when the normals are not linearly independent.
std::vector<BranchNormal> branch_normals(const Curve& c, const NodeSet& nodes, const Tolerances& tol = {});

struct DeletedNodeCheck {
  std::size_t node = 0;
  Real critical_x;  // nearest critical point of F(beta, .)
  Real critical_y;
  Real value;         // F(beta) there, relative to the term scale
  Real branch_value;  // <v_j, beta - alpha>
};

struct SimplifyOptions {
  double eps = 1e-3;    // bound on |beta - alpha|
  double delta = 1e-3;  // bound on the drift of a kept node
  std::uint64_t seed = 1;
  int max_retries = 12;  // step halvings
  int max_iterations = 100;
};

struct SimplifyResult {
  Curve beta;
  std::vector<std::size_t> keep;  // indices into the input node set
  NodeSet kept_nodes;             // the kept nodes on beta, same order as keep
  std::vector<DeletedNodeCheck> deleted_checks;
  std::vector<Real> direction;  // unit vector t
  Real step = 0;                // h, beta - alpha = h t + Newton correction
  Real distance = 0;            // |beta - alpha|
  Real max_drift = 0;           // largest kept-node displacement
  int iterations = 0;           // Gauss-Newton iterations
  int retries = 0;
  std::string global_check;  // outcome of the global singular-point solve
};

/// Keeps the nodes listed in `keep` (indices into `nodes`) and deletes the
/// rest. keep = all returns the input curve unchanged. Throws
/// NoSeparatingDirection, NewtonDiverged or DeletedNodePersists.
SimplifyResult simplify(const Curve& c, const NodeSet& nodes, const std::vector<std::size_t>& keep,
                        const SimplifyOptions& opt = {}, const Tolerances& tol = {});

struct PipelineResult {
  TypePQ type;
  int l = 0;
  NumericalSemigroup target;
  std::vector<std::size_t> selected;  // Lissajous node indices kept
  DhValue dh;                         // on the selected nodes before simplifying
  SimplifyResult simplified;
  NodeSemigroup result;
  bool matches = false;  // result.semigroup == target
};

/// Same steps for an arbitrary H obtained from <p,q> by closing gaps; the
/// outcome is recorded in `matches` rather than enforced.
PipelineResult semigroup_pipeline(const TypePQ& t, const NumericalSemigroup& target, const SimplifyOptions& opt = {},
                                  const Tolerances& tol = {});

/// Lissajous curve, keep l nodes on which D_H does not vanish, simplify, and
/// check that the nodes of the result give the l-greatest-gaps closure.
/// Throws SemigroupMismatch when they do not.
PipelineResult greatest_gaps_pipeline(const TypePQ& t, int l, const SimplifyOptions& opt = {},
                                      const Tolerances& tol = {});

}  // namespace wsg
