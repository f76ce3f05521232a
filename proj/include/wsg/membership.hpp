#pragma once

// Decision procedure for "H is the Weierstrass semigroup of a nodal curve of
// type p,q": the ideal of the point and determinant conditions over A,
// X_1, Y_1, ..., X_l, Y_l, and radical non-membership of h_t * prod Hess * D_H.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsg/curves.hpp"
#include "wsg/groebner.hpp"
#include "wsg/linalg.hpp"
#include "wsg/semigroup.hpp"

namespace wsg {

/// D^m_k: A_H with its m-th column replaced by s_k (both 1-based).
struct DeterminantCondition {
  int k = 0;
  int m = 0;
  SparsePoly poly;
};

struct CriterionInstance {
  TypePQ type;
  NumericalSemigroup h;
  int l = 0;
  TablePtr table;                          // A, X_1, Y_1, ..., X_l, Y_l, Z
  std::vector<GapDescriptor> closed;       // gamma_{j_1} < ... < gamma_{j_l}
  std::vector<GapDescriptor> open;         // gamma_{i_1} < ... < gamma_{i_g}
  std::vector<SparsePoly> point_equations; // F, F_X, F_Y at each point
  std::vector<DeterminantCondition> determinants;
  SparsePoly dh;                           // det A_H
  std::vector<SparsePoly> hessians;        // Hess F(X_i, Y_i)

  /// Generators of the ideal: point equations, then the D^m_k.
  std::vector<SparsePoly> generators() const;
};

/// Throws IncompatibleSemigroup unless p, q are in H and every gap of H is a
/// gap of <p,q>.
CriterionInstance build_instance(const TypePQ& t, const NumericalSemigroup& h);

enum class Outcome { IsWeierstrass, NotWeierstrass, Inconclusive };
std::string_view to_string(Outcome o);

struct MembershipBudget {
  int max_l = 2;
  int max_variables = 12;  // n + 2l
  std::uint64_t max_minors = 256;
  std::uint64_t seed = 1;  // random specialization for the minor order
  GroebnerBudget groebner;
};

struct Witness {
  std::uint64_t ordinal = 0;  // 1-based position in the minor stream
  MinorIndex minor;           // 0-based rows and columns of M
  std::size_t minor_terms = 0;
  int minor_degree = 0;  // total degree of h_t in the A variables
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<Witness> witness;
  std::uint64_t minors_tested = 0;
  std::uint64_t minors_total = 0;  // binomial(c, l)^2
  std::string reason;
};

/// Streams the (c-l)-minors of M, those nonzero at a random rational point
/// first and the rest in lexicographic order, and returns at the first one
/// with h_t * prod Hess * D_H outside the radical of the instance's ideal.
Verdict decide(const CriterionInstance& inst, const MembershipBudget& budget = {});

struct CrossCheck {
  bool passed = false;
  std::vector<std::string> failures;
};

/// Checks that (curve, nodes) is a point of V_pq(H): residuals, Hessians,
/// vanishing D^m_k, D_H != 0, singularity length l, and the node semigroup.
CrossCheck cross_validate(const CriterionInstance& inst, const Curve& curve, const NodeSet& nodes,
                          const Tolerances& tol = {});

struct PreconditionReport {
  bool ok = true;
  std::string message;
};

/// Warns when p is not larger than every minimal generator of H: then a
/// negative verdict only rules out nodal curves of type p,q.
PreconditionReport precondition_check(const TypePQ& t, const NumericalSemigroup& h);

}  // namespace wsg
