#include "wsg/linalg.hpp"

#include <algorithm>

namespace wsg {

ExactElimination eliminate(Matrix<Rational> a) {
  ExactElimination out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> rperm(rows), cperm(cols);
  for (std::size_t i = 0; i < rows; ++i) rperm[i] = i;
  for (std::size_t j = 0; j < cols; ++j) cperm[j] = j;
  Rational det = 1;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    // First nonzero entry in column order, then row order.
    std::size_t pr = rows, pc = cols;
    for (std::size_t j = k; j < cols && pr == rows; ++j) {
      for (std::size_t i = k; i < rows; ++i) {
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == rows) break;
    if (pr != k) {
      std::swap(a[k], a[pr]);
      std::swap(rperm[k], rperm[pr]);
      det = -det;
    }
    if (pc != k) {
      for (auto& row : a) std::swap(row[k], row[pc]);
      std::swap(cperm[k], cperm[pc]);
      det = -det;
    }
    out.pivot_rows.push_back(rperm[k]);
    out.pivot_cols.push_back(cperm[k]);
    ++out.rank;
    det *= a[k][k];
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < cols; ++j) a[i][j] -= f * a[k][j];
    }
  }
  out.det = (rows == cols && out.rank == rows) ? det : Rational(0);
  return out;
}

Rational determinant(const Matrix<Rational>& a) {
  if (a.empty()) return 1;
  if (a.size() != a[0].size()) throw Error(ErrorKind::PreconditionFailed, "determinant of a non-square matrix");
  return eliminate(a).det;
}

std::size_t rank(const Matrix<Rational>& a) { return eliminate(a).rank; }

std::optional<std::vector<Rational>> solve(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  Matrix<Rational> aug = a;
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(b[i]);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    while (pr < n && aug[pr][k] == 0) ++pr;
    if (pr == n) return std::nullopt;
    std::swap(aug[k], aug[pr]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || aug[i][k] == 0) continue;
      const Rational f = aug[i][k] / aug[k][k];
      for (std::size_t j = k; j <= n; ++j) aug[i][j] -= f * aug[k][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

Real magnitude(const Real& x) { return Real(abs(x)); }
Real magnitude(const ComplexReal& z) { return abs(z); }

std::vector<Real> min_norm_solve(const Matrix<Real>& j, const std::vector<Real>& r) {
  const std::size_t m = j.size();
  const std::size_t n = m ? j[0].size() : 0;
  Matrix<Real> g(m, std::vector<Real>(m, Real(0)));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      Real s = 0;
      for (std::size_t k = 0; k < n; ++k) s += j[a][k] * j[b][k];
      g[a][b] = s;
      g[b][a] = s;
    }
  }
  const auto y = numeric_solve<Real>(g, r);
  std::vector<Real> x(n, Real(0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t k = 0; k < n; ++k) x[k] += j[a][k] * y[a];
  }
  return x;
}

SparsePoly symbolic_minor(const Matrix<SparsePoly>& m, const MinorIndex& idx) {
  const std::size_t k = idx.rows.size();
  if (idx.cols.size() != k) throw Error(ErrorKind::PreconditionFailed, "minor index sets differ in size");
  if (k == 0) return SparsePoly::constant(m.at(0).at(0).table(), Rational(1));
  if (k > 20) throw Error(ErrorKind::ResourceBudgetExceeded, "symbolic minor too large");
  const TablePtr table = m[idx.rows[0]][idx.cols[0]].table();
  // level[mask] = determinant of the rows in mask against the first
  // popcount(mask) columns.
  std::unordered_map<std::uint32_t, SparsePoly> level;
  level.emplace(0u, SparsePoly::constant(table, Rational(1)));
  for (std::size_t col = 0; col < k; ++col) {
    std::unordered_map<std::uint32_t, SparsePoly> next;
    for (const auto& [mask, sub] : level) {
      if (sub.is_zero()) continue;
      // Expanding along column `col`: the sign of row r is (-1)^(rank of r
      // among the rows of the new mask) with the column being the last one.
      for (std::size_t r = 0; r < k; ++r) {
        if (mask & (1u << r)) continue;
        const SparsePoly& entry = m[idx.rows[r]][idx.cols[col]];
        if (entry.is_zero()) continue;
        const std::uint32_t nmask = mask | (1u << r);
        const int above = __builtin_popcount(nmask >> (r + 1));
        SparsePoly term = entry * sub;
        auto [it, inserted] = next.try_emplace(nmask, SparsePoly(table));
        if (above % 2) {
          it->second -= term;
        } else {
          it->second += term;
        }
      }
    }
    level = std::move(next);
  }
  const std::uint32_t full = k == 32 ? ~0u : ((1u << k) - 1);
  auto it = level.find(full);
  return it == level.end() ? SparsePoly(table) : it->second;
}

SparsePoly symbolic_determinant(const Matrix<SparsePoly>& m) {
  MinorIndex idx;
  for (std::size_t i = 0; i < m.size(); ++i) {
    idx.rows.push_back(i);
    idx.cols.push_back(i);
  }
  return symbolic_minor(m, idx);
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace wsg
