#pragma once

// Exact sparse multivariate polynomials over Q, variable tables for the
// coefficient ring of normed Weierstrass polynomials, monomial orders and
// the generic polynomial F with its derivatives.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsg/error.hpp"
#include "wsg/numeric.hpp"
#include "wsg/semigroup.hpp"

namespace wsg {

inline constexpr std::size_t kMaxVars = 32;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  int operator[](std::size_t i) const { return e[i]; }
  int total_degree() const;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  bool is_one() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Ordered list of named, weighted variables. Coefficient variables A[nu,mu]
/// come first (sorted by mu, then nu), followed by X, Y, the point variables
/// X1, Y1, ..., Xl, Yl and the auxiliary Z, whichever are present.
class VarTable {
 public:
  struct Spec {
    std::optional<TypePQ> type;
    bool coefficients = true;
    bool xy = true;
    int points = 0;
    bool z = false;
  };

  explicit VarTable(Spec spec);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int weight(std::size_t i) const { return weights_[i]; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  std::optional<std::size_t> find(const std::string& name) const;

  const std::optional<TypePQ>& type() const noexcept { return type_; }
  /// (nu, mu) pairs of the coefficient variables in table order.
  const std::vector<std::pair<int, int>>& coefficient_exponents() const noexcept { return coeff_exps_; }
  std::size_t coefficient_count() const noexcept { return coeff_exps_.size(); }
  /// Index of A[nu,mu]; the coefficient block starts at 0.
  std::size_t a(int nu, int mu) const;
  std::size_t x() const;
  std::size_t y() const;
  std::size_t point_x(int i) const;  // 1-based
  std::size_t point_y(int i) const;
  std::size_t z() const;
  bool has_xy() const noexcept { return x_.has_value(); }
  bool has_z() const noexcept { return z_.has_value(); }
  int points() const noexcept { return points_; }

 private:
  std::optional<TypePQ> type_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<std::pair<int, int>> coeff_exps_;
  std::optional<std::size_t> x_, y_, z_;
  int points_ = 0;
  std::size_t first_point_ = 0;
};

using TablePtr = std::shared_ptr<const VarTable>;

TablePtr make_table(VarTable::Spec spec);
/// A[nu,mu] for nu p + mu q < pq, in the canonical order (mu, then nu).
std::vector<std::pair<int, int>> coefficient_exponents(const TypePQ& t);

/// Block order: blocks are compared in sequence, graded reverse lexicographic
/// inside each block. One block is grevlex, singleton blocks give lex.
class MonomialOrder {
 public:
  static MonomialOrder grevlex(std::size_t arity);
  static MonomialOrder lex(std::size_t arity);
  static MonomialOrder blocks(std::vector<std::vector<std::size_t>> blocks);

  /// Positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  const std::vector<std::vector<std::size_t>>& block_list() const noexcept { return blocks_; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
};

class SparsePoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  explicit SparsePoly(TablePtr table) : table_(std::move(table)) {}
  static SparsePoly constant(TablePtr table, const Rational& value);
  static SparsePoly variable(TablePtr table, std::size_t var, int power = 1);
  static SparsePoly from_terms(TablePtr table, std::vector<Term> terms);

  const TablePtr& table() const noexcept { return table_; }
  /// Terms sorted by exponent vector, no zero coefficients.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  int total_degree() const;
  int degree_in(std::size_t var) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& s);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(SparsePoly a) { return a *= Rational(-1); }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const Rational& s) { return a *= s; }
  friend SparsePoly operator*(const Rational& s, SparsePoly a) { return a *= s; }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

  SparsePoly pow(int k) const;
  SparsePoly derivative(std::size_t var) const;
  /// Multiplies every term by the monomial m.
  SparsePoly shifted(const Monomial& m) const;
  /// Substitutes exact values for some variables; the table is kept.
  SparsePoly substitute(const std::map<std::size_t, Rational>& values) const;
  /// Replaces variable `var` by the polynomial `value` (same table).
  SparsePoly substitute(std::size_t var, const SparsePoly& value) const;
  /// Re-expresses the polynomial over `target`, sending variable i to
  /// `mapping[i]`.
  SparsePoly embed(TablePtr target, std::span<const std::size_t> mapping) const;

  /// Full evaluation with values for every variable of the table.
  template <class T>
  T eval(std::span<const T> values, const std::function<T(const Rational&)>& lift) const;

  /// Text form with terms in descending grevlex order, e.g. "2/3*A[1,0]*X^2*Y".
  std::string to_string() const;

 private:
  void normalize();

  TablePtr table_;
  std::vector<Term> terms_;
};

struct WeightedGrading {
  std::vector<int> weights;
  static WeightedGrading of(const VarTable& table) { return {table.weights()}; }
  int degree(const Monomial& m) const;
};

struct WeightedDegree {
  bool homogeneous = true;
  int degree = 0;      // common degree when homogeneous
  int max_degree = 0;  // largest degree of a term
};

WeightedDegree weighted_degree(const SparsePoly& f, const WeightedGrading& g);

/// Y^p - X^q + sum A[nu,mu] X^nu Y^mu over a table with coefficients, X, Y.
SparsePoly generic_weierstrass(const TypePQ& t);
SparsePoly generic_weierstrass(const TypePQ& t, const TablePtr& table, std::size_t x, std::size_t y);
/// (df/dX, df/dY) with X, Y taken from the table.
std::pair<SparsePoly, SparsePoly> partials(const SparsePoly& f);
SparsePoly hessian(const SparsePoly& f);
SparsePoly hessian(const SparsePoly& f, std::size_t x, std::size_t y);

/// Substitution by variable names; unknown names raise ArityMismatch.
SparsePoly evaluate(const SparsePoly& f, const std::map<std::string, Rational>& assignment);

template <class T>
T SparsePoly::eval(std::span<const T> values, const std::function<T(const Rational&)>& lift) const {
  if (values.size() != table_->size()) {
    throw Error(ErrorKind::ArityMismatch, "evaluation needs one value per variable");
  }
  T acc = lift(Rational(0));
  for (const auto& [m, c] : terms_) {
    T term = lift(c);
    for (std::size_t v = 0; v < table_->size(); ++v) {
      for (int k = 0; k < m[v]; ++k) term = term * values[v];
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace wsg
