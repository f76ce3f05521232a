#pragma once

// Buchberger's algorithm (sugar selection, product and chain criteria) over
// content-free integer polynomials, with normal forms, ideal and radical
// membership and the dimension of zero-dimensional quotients.

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "wsg/polyring.hpp"

namespace wsg {

/// Caps for a single basis computation; exceeding one raises
/// ResourceBudgetExceeded.
struct GroebnerBudget {
  std::uint64_t max_pairs = 200000;
  int max_degree = 200;
  double timeout_secs = 120.0;
};

struct GroebnerStats {
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
};

class GroebnerBasis {
 public:
  GroebnerBasis(TablePtr table, MonomialOrder order, std::vector<SparsePoly> polys, GroebnerStats stats);

  const TablePtr& table() const noexcept { return table_; }
  const MonomialOrder& order() const noexcept { return order_; }
  /// Reduced basis, monic, sorted by leading monomial (ascending).
  const std::vector<SparsePoly>& polys() const noexcept { return polys_; }
  const std::vector<Monomial>& leading_monomials() const noexcept { return leading_; }
  const GroebnerStats& stats() const noexcept { return stats_; }
  bool is_unit() const;

  /// Unique remainder of f modulo the basis.
  SparsePoly normal_form(const SparsePoly& f) const;

 private:
  TablePtr table_;
  MonomialOrder order_;
  std::vector<SparsePoly> polys_;
  std::vector<Monomial> leading_;
  GroebnerStats stats_;
};

GroebnerBasis groebner_basis(const std::vector<SparsePoly>& generators, const MonomialOrder& order,
                             const GroebnerBudget& budget = {});

/// Leading monomial of f under `order`; f must be nonzero.
Monomial leading_monomial(const SparsePoly& f, const MonomialOrder& order);
/// S-polynomial over Q.
SparsePoly s_polynomial(const SparsePoly& f, const SparsePoly& g, const MonomialOrder& order);

class Ideal {
 public:
  Ideal(TablePtr table, std::vector<SparsePoly> generators);

  const TablePtr& table() const noexcept { return table_; }
  const std::vector<SparsePoly>& generators() const noexcept { return generators_; }

  /// Basis for `order`, computed once and cached.
  const GroebnerBasis& basis(const MonomialOrder& order, const GroebnerBudget& budget = {}) const;
  const GroebnerBasis& basis(const GroebnerBudget& budget = {}) const;

 private:
  TablePtr table_;
  std::vector<SparsePoly> generators_;
  mutable std::mutex mutex_;
  mutable std::vector<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>> cache_;
};

struct QuotientInfo {
  bool finite_dimensional = false;
  std::size_t dimension = 0;  // meaningful only when finite
  std::vector<Monomial> standard_monomials;
};

bool ideal_member(const SparsePoly& f, const Ideal& ideal, const GroebnerBudget& budget = {});

/// f in Rad(I), decided by 1 in I + (1 - Z f). Uses the table's Z if present
/// (it must not occur in I or f), otherwise adjoins one.
bool radical_member(const SparsePoly& f, const Ideal& ideal, const GroebnerBudget& budget = {});
/// The same test for the product of `factors`, whose normal form is built
/// factor by factor.
bool radical_member_product(const std::vector<SparsePoly>& factors, const Ideal& ideal,
                            const MonomialOrder& order, const GroebnerBudget& budget = {});

QuotientInfo quotient_dimension(const Ideal& ideal, const GroebnerBudget& budget = {});

}  // namespace wsg
