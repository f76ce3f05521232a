#pragma once

// Small dense linear algebra over exact rationals, multiprecision reals and
// complexes, plus division-free symbolic determinants of polynomial matrices.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wsg/error.hpp"
#include "wsg/numeric.hpp"
#include "wsg/polyring.hpp"

namespace wsg {

template <class T>
using Matrix = std::vector<std::vector<T>>;  // row-major

template <class T>
Matrix<T> zero_matrix(std::size_t rows, std::size_t cols, const T& zero) {
  return Matrix<T>(rows, std::vector<T>(cols, zero));
}

/// Row and column index sets of a square submatrix.
struct MinorIndex {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
};

// ---------------------------------------------------------------------------
// Exact rational elimination.

struct ExactElimination {
  std::size_t rank = 0;
  Rational det = 0;  // only meaningful for square input
  /// Pivot positions in elimination order; the leading k x k submatrix on
  /// these rows and columns is nonsingular for every k <= rank.
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

ExactElimination eliminate(Matrix<Rational> a);
Rational determinant(const Matrix<Rational>& a);
std::size_t rank(const Matrix<Rational>& a);
/// Solves a x = b for square nonsingular a; nullopt when singular.
std::optional<std::vector<Rational>> solve(const Matrix<Rational>& a, const std::vector<Rational>& b);

// ---------------------------------------------------------------------------
// Floating elimination over Real or Complex<Real>.

Real magnitude(const Real& x);
Real magnitude(const ComplexReal& z);

struct NumericRank {
  std::size_t rank = 0;
  /// A pivot fell between the decision thresholds.
  bool ambiguous = false;
  Real smallest_accepted = 0;  // relative size of the weakest accepted pivot
  Real largest_rejected = 0;   // relative size of the strongest rejected pivot
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

/// Complete-pivoting rank. Pivots below `tol_rank` relative to the largest
/// entry count as zero, pivots above `tol_ambiguous` as nonzero, anything in
/// between marks the result ambiguous.
template <class T>
NumericRank numeric_rank(Matrix<T> a, const Real& tol_rank, const Real& tol_ambiguous);

template <class T>
T numeric_determinant(Matrix<T> a);

/// Solves a x = b with partial pivoting; throws RankDeficient on a zero pivot.
template <class T>
std::vector<T> numeric_solve(Matrix<T> a, std::vector<T> b);

/// Minimal-norm solution of the underdetermined system j x = r (j has full
/// row rank): x = j^T (j j^T)^{-1} r.
std::vector<Real> min_norm_solve(const Matrix<Real>& j, const std::vector<Real>& r);

// ---------------------------------------------------------------------------
// Symbolic determinants.

/// Determinant of the square submatrix on `rows` x `cols` by Laplace
/// expansion along columns, memoized on row subsets (2^k states, no
/// division).
SparsePoly symbolic_minor(const Matrix<SparsePoly>& m, const MinorIndex& idx);
SparsePoly symbolic_determinant(const Matrix<SparsePoly>& m);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);
std::uint64_t binomial(std::size_t n, std::size_t k);

// ---------------------------------------------------------------------------

template <class T>
NumericRank numeric_rank(Matrix<T> a, const Real& tol_rank, const Real& tol_ambiguous) {
  NumericRank out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  Real scale = 0;
  for (const auto& row : a) {
    for (const auto& v : row) scale = std::max(scale, magnitude(v));
  }
  if (scale == 0) return out;
  std::vector<std::size_t> rperm(rows), cperm(cols);
  for (std::size_t i = 0; i < rows; ++i) rperm[i] = i;
  for (std::size_t j = 0; j < cols; ++j) cperm[j] = j;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = k, pc = k;
    Real best = -1;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        Real m = magnitude(a[i][j]);
        if (m > best) {
          best = m;
          pr = i;
          pc = j;
        }
      }
    }
    const Real rel = best / scale;
    if (rel <= tol_rank) {
      out.largest_rejected = rel;
      break;
    }
    if (rel < tol_ambiguous) out.ambiguous = true;
    std::swap(a[k], a[pr]);
    std::swap(rperm[k], rperm[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    std::swap(cperm[k], cperm[pc]);
    out.pivot_rows.push_back(rperm[k]);
    out.pivot_cols.push_back(cperm[k]);
    out.smallest_accepted = rel;
    ++out.rank;
    for (std::size_t i = k + 1; i < rows; ++i) {
      T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < cols; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return out;
}

template <class T>
T numeric_determinant(Matrix<T> a) {
  const std::size_t n = a.size();
  T det = T(Real(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    Real best = magnitude(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real m = magnitude(a[i][k]);
      if (m > best) {
        best = m;
        pr = i;
      }
    }
    if (best == 0) return T(Real(0));
    if (pr != k) {
      std::swap(a[k], a[pr]);
      det = -det;
    }
    det = det * a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

template <class T>
std::vector<T> numeric_solve(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    Real best = magnitude(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real m = magnitude(a[i][k]);
      if (m > best) {
        best = m;
        pr = i;
      }
    }
    if (best == 0) throw Error(ErrorKind::RankDeficient, "singular linear system");
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<T> x(n, T(Real(0)));
  for (std::size_t k = n; k-- > 0;) {
    T s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

}  // namespace wsg
