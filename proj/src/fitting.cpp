#include "wsg/fitting.hpp"

#include <algorithm>

namespace wsg {

std::vector<std::pair<int, int>> basis_b(const TypePQ& t) {
  std::vector<std::pair<int, int>> out;
  for (int nu = 0; nu < t.q() - 1; ++nu) {
    for (int mu = 0; mu < t.p() - 1; ++mu) out.emplace_back(nu, mu);
  }
  const int p = t.p();
  const int q = t.q();
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return a.first * p + a.second * q < b.first * p + b.second * q; });
  return out;
}

std::size_t basis_index(const TypePQ& t, int nu, int mu) {
  const auto b = basis_b(t);
  const auto it = std::find(b.begin(), b.end(), std::make_pair(nu, mu));
  if (it == b.end()) throw Error(ErrorKind::PreconditionFailed, "monomial is not in the basis");
  return static_cast<std::size_t>(it - b.begin());
}

namespace {

BasisReducer<SparsePoly> symbolic_reducer(const TypePQ& t, const TablePtr& table) {
  std::vector<SparsePoly> coeffs;
  for (std::size_t i = 0; i < table->coefficient_count(); ++i) coeffs.push_back(SparsePoly::variable(table, i));
  return BasisReducer<SparsePoly>(
      t, std::move(coeffs), [table](const Rational& r) { return SparsePoly::constant(table, r); },
      [](const SparsePoly& f) { return f.is_zero(); });
}

BasisReducer<Rational> rational_reducer(const TypePQ& t, const std::vector<Rational>& alpha) {
  return BasisReducer<Rational>(
      t, alpha, [](const Rational& r) { return r; }, [](const Rational& r) { return r == 0; });
}

}  // namespace

GenericModule generic_relation_matrix(const TypePQ& t) {
  auto table = make_table({.type = t, .coefficients = true, .xy = false});
  auto r = symbolic_reducer(t, table);
  return {t, table, relation_matrix(r)};
}

std::vector<SparsePoly> reduce_to_basis(const TypePQ& t, int alpha, int beta) {
  auto table = make_table({.type = t, .coefficients = true, .xy = false});
  auto r = symbolic_reducer(t, table);
  return r.reduce(alpha, beta);
}

SparsePoly delta(const TypePQ& t, const DeltaBudget& budget) {
  if (t.c() > budget.max_c) {
    throw Error(ErrorKind::ResourceBudgetExceeded, "symbolic Delta needs c <= " + std::to_string(budget.max_c) +
                                                       ", got c = " + std::to_string(t.c()));
  }
  // Clearing denominators first keeps every product on integer coefficients.
  auto m = generic_relation_matrix(t).m;
  Integer den = 1;
  for (const auto& row : m) {
    for (const auto& e : row) {
      for (const auto& term : e.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), term.second.get_den_mpz_t());
    }
  }
  for (auto& row : m) {
    for (auto& e : row) e *= Rational(den);
  }
  Integer scale = 1;
  for (int i = 0; i < t.c(); ++i) scale *= den;
  Rational inv(Integer(1), scale);
  inv.canonicalize();
  return symbolic_determinant(m) * inv;
}

std::vector<Rational> coefficient_vector(const TypePQ& t, const std::map<std::pair<int, int>, Rational>& alpha) {
  const auto exps = coefficient_exponents(t);
  std::vector<Rational> out(exps.size(), Rational(0));
  for (const auto& [key, value] : alpha) {
    const auto it = std::find(exps.begin(), exps.end(), key);
    if (it == exps.end()) {
      throw Error(ErrorKind::BadExponent, "(" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                              "): nu p + mu q must stay below pq");
    }
    out[static_cast<std::size_t>(it - exps.begin())] = value;
  }
  return out;
}

Matrix<Rational> relation_matrix_at(const TypePQ& t, const std::vector<Rational>& alpha) {
  auto r = rational_reducer(t, alpha);
  return relation_matrix(r);
}

Rational delta_at(const TypePQ& t, const std::vector<Rational>& alpha) { return determinant(relation_matrix_at(t, alpha)); }

bool fitting_minor_nonzero_at(const TypePQ& t, int l, const std::vector<Rational>& alpha) {
  if (l < 0 || l > t.c()) throw Error(ErrorKind::PreconditionFailed, "l must lie in [0, c]");
  if (l == t.c()) return true;
  return rank(relation_matrix_at(t, alpha)) >= static_cast<std::size_t>(t.c() - l);
}

std::optional<MinorIndex> nonzero_minor_at(const TypePQ& t, int l, const std::vector<Rational>& alpha) {
  if (l < 0 || l > t.c()) throw Error(ErrorKind::PreconditionFailed, "l must lie in [0, c]");
  const auto k = static_cast<std::size_t>(t.c() - l);
  const auto e = eliminate(relation_matrix_at(t, alpha));
  if (e.rank < k) return std::nullopt;
  MinorIndex idx{{e.pivot_rows.begin(), e.pivot_rows.begin() + static_cast<std::ptrdiff_t>(k)},
                 {e.pivot_cols.begin(), e.pivot_cols.begin() + static_cast<std::ptrdiff_t>(k)}};
  std::sort(idx.rows.begin(), idx.rows.end());
  std::sort(idx.cols.begin(), idx.cols.end());
  return idx;
}

std::optional<MinorIndex> first_nonzero_minor_lex(const Matrix<Rational>& m, std::size_t k) {
  const std::size_t n = m.size();
  if (k == 0) return MinorIndex{};
  for (const auto& rows : subsets(n, k)) {
    for (const auto& cols : subsets(n, k)) {
      Matrix<Rational> sub(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rows[i]][cols[j]];
      }
      if (determinant(sub) != 0) return MinorIndex{rows, cols};
    }
  }
  return std::nullopt;
}

SparsePoly specialized_curve(const TypePQ& t, const std::vector<Rational>& alpha) {
  auto table = make_table({.type = t, .coefficients = false, .xy = true});
  const auto exps = coefficient_exponents(t);
  if (alpha.size() != exps.size()) throw Error(ErrorKind::ArityMismatch, "coefficient count differs from n");
  const auto X = SparsePoly::variable(table, table->x());
  const auto Y = SparsePoly::variable(table, table->y());
  SparsePoly f = Y.pow(t.p()) - X.pow(t.q());
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (alpha[k] != 0) f += X.pow(exps[k].first) * Y.pow(exps[k].second) * alpha[k];
  }
  return f;
}

int singularity_length(const TypePQ& t, const std::vector<Rational>& alpha, const GroebnerBudget& budget) {
  const auto f = specialized_curve(t, alpha);
  auto [fx, fy] = partials(f);
  const auto info = quotient_dimension(Ideal(f.table(), {f, fx, fy}), budget);
  if (!info.finite_dimensional) {
    throw Error(ErrorKind::InternalConsistency, "singular locus of a curve of type p,q is not finite");
  }
  return static_cast<int>(info.dimension);
}

}  // namespace wsg
