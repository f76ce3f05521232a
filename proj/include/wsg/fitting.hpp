#pragma once

// The free module N = R[xi,eta]/(F_X, F_Y) with basis B, the matrix M of
// multiplication by F on it, its determinant Delta and the Fitting ideals of
// the cokernel, symbolically and at specialized coefficients.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wsg/groebner.hpp"
#include "wsg/linalg.hpp"
#include "wsg/polyring.hpp"

namespace wsg {

/// Exponent pairs (nu, mu), nu < q-1, mu < p-1, ascending in nu p + mu q.
std::vector<std::pair<int, int>> basis_b(const TypePQ& t);
/// Position of (nu, mu) in basis_b.
std::size_t basis_index(const TypePQ& t, int nu, int mu);

/// Rewrites xi^alpha eta^beta in the basis B using
///   xi^{q-1}  = (1/q) sum nu A[nu,mu] xi^{nu-1} eta^mu,
///   eta^{p-1} = -(1/p) sum mu A[nu,mu] xi^nu eta^{mu-1}.
/// The scalar type T is SparsePoly for the generic matrix, or Rational, Real,
/// ComplexReal at specialized coefficients. Results are memoized.
template <class T>
class BasisReducer {
 public:
  /// `coeffs` holds the value of every A[nu,mu] in canonical order, `lift`
  /// embeds rationals into T.
  BasisReducer(const TypePQ& t, std::vector<T> coeffs, std::function<T(const Rational&)> lift,
               std::function<bool(const T&)> is_zero);

  const std::vector<T>& reduce(int alpha, int beta);
  const TypePQ& type() const { return t_; }
  const T& coefficient(std::size_t i) const { return coeffs_[i]; }
  T lift(const Rational& r) const { return lift_(r); }
  bool is_zero(const T& v) const { return is_zero_(v); }

 private:
  TypePQ t_;
  std::vector<T> coeffs_;
  std::vector<std::pair<int, int>> exps_;
  std::vector<std::pair<int, int>> basis_;
  std::function<T(const Rational&)> lift_;
  std::function<bool(const T&)> is_zero_;
  std::map<std::pair<int, int>, std::vector<T>> memo_;
};

/// Relation matrix: column (alpha,beta) holds the B-coordinates of
/// xi^alpha eta^beta F(xi,eta).
template <class T>
Matrix<T> relation_matrix(BasisReducer<T>& r);
/// Matrix of multiplication by xi^a eta^b on N (same column convention).
template <class T>
Matrix<T> multiplication_matrix(BasisReducer<T>& r, int a, int b);

/// Generic objects over the coefficient-only table.
struct GenericModule {
  TypePQ t;
  TablePtr table;  // A variables only
  Matrix<SparsePoly> m;
};
GenericModule generic_relation_matrix(const TypePQ& t);
/// B-coordinates of xi^alpha eta^beta over the A-ring.
std::vector<SparsePoly> reduce_to_basis(const TypePQ& t, int alpha, int beta);

struct DeltaBudget {
  int max_c = 6;
};
/// Delta = det M as a polynomial in the A variables.
SparsePoly delta(const TypePQ& t, const DeltaBudget& budget = {});

/// Coefficient values in canonical order; missing entries are zero. Keys
/// outside nu p + mu q < pq raise BadExponent.
std::vector<Rational> coefficient_vector(const TypePQ& t, const std::map<std::pair<int, int>, Rational>& alpha);

Matrix<Rational> relation_matrix_at(const TypePQ& t, const std::vector<Rational>& alpha);
Rational delta_at(const TypePQ& t, const std::vector<Rational>& alpha);
/// Some (c-l)-minor of M(alpha) is nonzero.
bool fitting_minor_nonzero_at(const TypePQ& t, int l, const std::vector<Rational>& alpha);
/// A nonzero (c-l)-minor of M(alpha), if there is one.
std::optional<MinorIndex> nonzero_minor_at(const TypePQ& t, int l, const std::vector<Rational>& alpha);
/// First nonzero (c-l)-minor in lexicographic order of (rows, cols).
std::optional<MinorIndex> first_nonzero_minor_lex(const Matrix<Rational>& m, std::size_t k);

/// F(alpha, X, Y) over an X,Y table.
SparsePoly specialized_curve(const TypePQ& t, const std::vector<Rational>& alpha);
/// dim Q[X,Y]/(F, F_X, F_Y).
int singularity_length(const TypePQ& t, const std::vector<Rational>& alpha, const GroebnerBudget& budget = {});

// ---------------------------------------------------------------------------

template <class T>
BasisReducer<T>::BasisReducer(const TypePQ& t, std::vector<T> coeffs, std::function<T(const Rational&)> lift,
                              std::function<bool(const T&)> is_zero)
    : t_(t),
      coeffs_(std::move(coeffs)),
      exps_(coefficient_exponents(t)),
      basis_(basis_b(t)),
      lift_(std::move(lift)),
      is_zero_(std::move(is_zero)) {
  if (coeffs_.size() != exps_.size()) throw Error(ErrorKind::ArityMismatch, "coefficient count differs from n");
}

template <class T>
const std::vector<T>& BasisReducer<T>::reduce(int alpha, int beta) {
  const auto key = std::make_pair(alpha, beta);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const int p = t_.p();
  const int q = t_.q();
  const std::size_t c = basis_.size();
  std::vector<T> out(c, lift_(Rational(0)));
  const int deg = alpha * p + beta * q;
  auto accumulate = [&](int a2, int b2, const T& factor) {
    if (a2 * p + b2 * q >= deg) throw Error(ErrorKind::InternalConsistency, "reduction did not lower the degree");
    const std::vector<T> sub = reduce(a2, b2);  // copy: memo_ may rehash
    for (std::size_t i = 0; i < c; ++i) {
      if (!is_zero_(sub[i])) out[i] = out[i] + factor * sub[i];
    }
  };
  if (alpha < q - 1 && beta < p - 1) {
    const auto pos = std::find(basis_.begin(), basis_.end(), key) - basis_.begin();
    out[static_cast<std::size_t>(pos)] = lift_(Rational(1));
  } else if (alpha >= q - 1) {
    for (std::size_t k = 0; k < exps_.size(); ++k) {
      const auto [nu, mu] = exps_[k];
      if (nu == 0 || is_zero_(coeffs_[k])) continue;
      accumulate(alpha - q + nu, beta + mu, lift_(frac(nu, q)) * coeffs_[k]);
    }
  } else {
    for (std::size_t k = 0; k < exps_.size(); ++k) {
      const auto [nu, mu] = exps_[k];
      if (mu == 0 || is_zero_(coeffs_[k])) continue;
      accumulate(alpha + nu, beta - p + mu, lift_(frac(-mu, p)) * coeffs_[k]);
    }
  }
  for (auto& v : out) {
    if (is_zero_(v)) v = lift_(Rational(0));
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

template <class T>
Matrix<T> relation_matrix(BasisReducer<T>& r) {
  const TypePQ& t = r.type();
  const auto basis = basis_b(t);
  const auto exps = coefficient_exponents(t);
  const std::size_t c = basis.size();
  Matrix<T> m = zero_matrix(c, c, r.lift(Rational(0)));
  for (std::size_t col = 0; col < c; ++col) {
    const auto [al, be] = basis[col];
    auto add = [&](int a2, int b2, const T& factor) {
      const std::vector<T> coords = r.reduce(a2, b2);
      for (std::size_t row = 0; row < c; ++row) {
        if (!r.is_zero(coords[row])) m[row][col] = m[row][col] + factor * coords[row];
      }
    };
    add(al, be + t.p(), r.lift(Rational(1)));
    add(al + t.q(), be, r.lift(Rational(-1)));
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (r.is_zero(r.coefficient(k))) continue;
      add(al + exps[k].first, be + exps[k].second, r.coefficient(k));
    }
  }
  return m;
}

template <class T>
Matrix<T> multiplication_matrix(BasisReducer<T>& r, int a, int b) {
  const auto basis = basis_b(r.type());
  const std::size_t c = basis.size();
  Matrix<T> m = zero_matrix(c, c, r.lift(Rational(0)));
  for (std::size_t col = 0; col < c; ++col) {
    const std::vector<T> coords = r.reduce(basis[col].first + a, basis[col].second + b);
    for (std::size_t row = 0; row < c; ++row) m[row][col] = coords[row];
  }
  return m;
}

}  // namespace wsg
