#pragma once

// Concrete curves Y^p - X^q + sum a[nu,mu] X^nu Y^mu: validation, singular
// points, nodes, the semigroup read off from the nodes, and two families of
// nodal curves (one prescribed node, and the Lissajous curve with d nodes).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsg/fitting.hpp"
#include "wsg/groebner.hpp"
#include "wsg/linalg.hpp"
#include "wsg/semigroup.hpp"

namespace wsg {

enum class Exactness { Exact, Approx };
std::string_view to_string(Exactness e);

/// Numerical thresholds. A zero tol_sing means 2^-(precision_bits - 24).
struct Tolerances {
  unsigned precision_bits = 128;
  double tol_sing = 0.0;
  double tol_node = 1e-12;
  double tol_sep = 1e-8;
  double tol_rank = 1e-20;
  double tol_ambiguous = 1e-10;
  GroebnerBudget groebner;

  Real sing() const;  // at the current precision
};

class Curve {
 public:
  /// Keys must satisfy nu p + mu q < pq (BadExponent otherwise).
  static Curve exact(const TypePQ& t, const std::map<std::pair<int, int>, Rational>& coeffs);
  static Curve exact(const TypePQ& t, std::vector<Rational> coeffs);
  static Curve approx(const TypePQ& t, std::vector<Real> coeffs, unsigned precision_bits);

  const TypePQ& type() const noexcept { return t_; }
  Exactness exactness() const noexcept { return exactness_; }
  bool is_exact() const noexcept { return exactness_ == Exactness::Exact; }
  unsigned precision_bits() const noexcept { return bits_; }
  /// Canonical A-order; throws PreconditionFailed on an APPROX curve.
  const std::vector<Rational>& exact_coeffs() const;
  /// Coefficients as reals at the current precision.
  std::vector<Real> real_coeffs() const;
  /// F over an X,Y table (EXACT only).
  SparsePoly polynomial() const;
  /// Decimal strings of an APPROX curve, A-order.
  const std::vector<std::string>& approx_strings() const noexcept { return approx_; }
  std::string to_string() const;

 private:
  Curve(TypePQ t, Exactness e) : t_(t), exactness_(e) {}
  TypePQ t_;
  Exactness exactness_;
  std::vector<Rational> exact_;
  std::vector<std::string> approx_;  // decimal strings, precision-independent
  unsigned bits_ = 0;
};

/// Checks gcd(p,q) = 1 and the exponent constraint; throws BadType or
/// BadExponent.
void validate_curve(int p, int q, const std::map<std::pair<int, int>, Rational>& coeffs);

/// Values of F and its first and second partials at one point.
template <class S>
struct Jet {
  S f, fx, fy, fxx, fxy, fyy;
  S hessian() const { return fxx * fyy - fxy * fxy; }
};

/// Evaluates F(beta, x, y) and derivatives at real or complex points.
class CurveEvaluator {
 public:
  CurveEvaluator(const TypePQ& t, std::vector<Real> coeffs);
  explicit CurveEvaluator(const Curve& c) : CurveEvaluator(c.type(), c.real_coeffs()) {}

  Jet<ComplexReal> jet(const ComplexReal& x, const ComplexReal& y) const;
  Jet<Real> jet(const Real& x, const Real& y) const;
  /// Sum of |term| at the point, used to make residuals relative.
  Real scale(const ComplexReal& x, const ComplexReal& y) const;
  const std::vector<std::pair<int, int>>& exponents() const { return exps_; }
  const std::vector<Real>& coefficients() const { return coeffs_; }
  const TypePQ& type() const { return t_; }

 private:
  TypePQ t_;
  std::vector<Real> coeffs_;  // includes Y^p and -X^q as the last two entries
  std::vector<std::pair<int, int>> exps_;
};

struct SingularPoint {
  ComplexReal x;
  ComplexReal y;
  std::optional<Rational> exact_x;
  std::optional<Rational> exact_y;
  Real residual = 0;  // max(|F|, |F_X|, |F_Y|) relative to the term scale
  ComplexReal hessian;
  std::optional<Rational> exact_hessian;
  bool is_node = false;

  bool is_exact() const { return exact_x.has_value(); }
  bool is_real(const Real& tol) const;
};

/// Residual and Hessian of F at (x, y); a node when the relative Hessian is
/// at least tol_node.
SingularPoint classify_point(const CurveEvaluator& ev, const ComplexReal& x, const ComplexReal& y,
                             const Tolerances& tol);

/// Newton on (F_X, F_Y) at the current precision; nullopt when it does not
/// converge to a critical point.
std::optional<std::pair<ComplexReal, ComplexReal>> polish_critical_point(const CurveEvaluator& ev, ComplexReal x,
                                                                         ComplexReal y, unsigned precision_bits);

struct NodeSet {
  Exactness exactness = Exactness::Exact;
  std::vector<SingularPoint> points;
  std::size_t size() const { return points.size(); }
};

struct SingularLocus {
  NodeSet nodes;
  std::vector<SingularPoint> others;  // singular points that are not nodes
  std::string method;                 // "exact" or "eigen"
  int critical_points = -1;           // distinct simple critical points found (APPROX)
  bool certified = false;
};

/// All common zeros of F, F_X, F_Y. EXACT curves with only rational singular
/// points are solved exactly; otherwise the c critical points are located as
/// joint eigenvectors of multiplication by X and Y on N and polished by
/// Newton. Throws SolverIncomplete when neither path is conclusive.
SingularLocus singular_points(const Curve& c, const Tolerances& tol = {});

/// Critical points (F_X = F_Y = 0) of an APPROX or EXACT curve, polished at
/// the current precision. `complete` is true when c distinct simple ones
/// were found.
struct CriticalPoints {
  std::vector<std::pair<ComplexReal, ComplexReal>> points;
  bool complete = false;
};
CriticalPoints critical_points(const Curve& c, const Tolerances& tol = {});

/// (Y-b)^p - (X-a)^q + s (X-a)(Y-b), which has a single singular point, a
/// node at (a,b).
Curve one_node_curve(const TypePQ& t, const Rational& a, const Rational& b, const Rational& s);

struct LissajousCurve {
  Curve curve;
  NodeSet nodes;
  std::string normalization;
};

/// D_p(Y) - D_q(X) with the Dickson polynomials D_n(2 cos t) = 2 cos(n t);
/// parameterized by X = 2 cos(p t), Y = 2 cos(q t). Its nodes are
/// (2 cos(pi k/q), 2 cos(pi j/p)) with k = 1..q-1, j = 1..p-1, k = j mod 2.
LissajousCurve lissajous_curve(const TypePQ& t, const Tolerances& tol = {});

/// E[i][j] = x_i^{a_j} y_i^{b_j}, columns in ascending gap order.
Matrix<ComplexReal> gap_matrix(const TypePQ& t, const NodeSet& nodes);
std::optional<Matrix<Rational>> exact_gap_matrix(const TypePQ& t, const NodeSet& nodes);

struct DhValue {
  ComplexReal value;
  std::optional<Rational> exact;
  bool nonzero(const Real& tol) const;
};

/// det of E restricted to the given closed-gap columns.
DhValue dh_determinant(const TypePQ& t, const NodeSet& nodes, const std::vector<GapDescriptor>& closed);

struct NodeSemigroup {
  NumericalSemigroup semigroup;
  std::vector<GapDescriptor> closed;  // ascending gamma
  std::vector<int> pivot_indices;     // 1-based gap indices, scan order
  DhValue dh;
};

/// Scans the columns of E by descending gamma; a gap is closed when its
/// column is independent of the columns already scanned. Throws RankDeficient
/// when the number of closed gaps differs from the node count or a pivot
/// falls between tol_rank and tol_ambiguous.
NodeSemigroup node_semigroup(const Curve& c, const NodeSet& nodes, const Tolerances& tol = {});

/// l nodes on which the closed-gap columns of H are independent, chosen by
/// row pivoting; nullopt when no such subset exists.
std::optional<std::vector<std::size_t>> select_nodes_for(const TypePQ& t, const NodeSet& nodes,
                                                         const NumericalSemigroup& h, const Tolerances& tol = {});

struct LineMember {
  Rational s;
  Rational delta;
  bool nodal = false;
  int nodes = 0;
  std::optional<NumericalSemigroup> semigroup;
};

struct LineReport {
  std::pair<Rational, Rational> common_point;
  std::vector<LineMember> members;  // alpha(s) = (1-s) alpha1 + s alpha2
  int proof_bound = 0;              // samples needed to force Delta = 0 on the line
  bool delta_vanishes = false;      // at every sample
  bool identically_zero = false;    // vanishes and samples >= proof_bound
  bool semigroups_agree = false;    // over all nodal members
  std::optional<NumericalSemigroup> common_semigroup;
};

/// Samples Delta on the line through two EXACT curves that share a singular
/// point and compares the semigroups of its nodal members.
LineReport line_semigroup_check(const Curve& c1, const Curve& c2, int samples, const Tolerances& tol = {});

}  // namespace wsg
