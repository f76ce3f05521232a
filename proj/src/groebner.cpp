#include "wsg/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace wsg {

namespace {

using Clock = std::chrono::steady_clock;

struct OrderGreater {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using WorkPoly = std::map<Monomial, Integer, OrderGreater>;

/// Integer polynomial with terms in descending order.
struct IPoly {
  std::vector<std::pair<Monomial, Integer>> terms;
  int sugar = 0;

  const Monomial& lm() const { return terms.front().first; }
  const Integer& lc() const { return terms.front().second; }
};

void make_primitive(std::vector<std::pair<Monomial, Integer>>& terms) {
  if (terms.empty()) return;
  Integer g = 0;
  for (const auto& t : terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
    if (g == 1) break;
  }
  if (terms.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& t : terms) mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), g.get_mpz_t());
  }
}

/// Clears denominators: returns the integer polynomial and the factor D with
/// ipoly = D * f.
std::pair<std::vector<std::pair<Monomial, Integer>>, Integer> to_integer(const SparsePoly& f,
                                                                          const MonomialOrder& order) {
  Integer den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
  std::vector<std::pair<Monomial, Integer>> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Integer v = t.second.get_num() * (den / t.second.get_den());
    out.emplace_back(t.first, std::move(v));
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
  return {std::move(out), den};
}

class Reducer {
 public:
  Reducer(const MonomialOrder& order, const std::vector<IPoly>& basis, const std::vector<bool>& active)
      : order_(order), basis_(basis), active_(active) {}

  /// Full reduction. Returns the remainder r and multiplier k with
  /// r = k * f - (combination of basis elements).
  std::pair<std::vector<std::pair<Monomial, Integer>>, Integer> reduce(
      const std::vector<std::pair<Monomial, Integer>>& f, int* sugar, const std::function<void()>& tick) const {
    WorkPoly work(OrderGreater{&order_});
    for (const auto& t : f) work.emplace(t.first, t.second);
    std::vector<std::pair<Monomial, Integer>> rem;
    Integer mult = 1;
    Integer g, a, b, prod;
    std::size_t steps = 0;
    while (!work.empty()) {
      auto lead = work.begin();
      const IPoly* red = nullptr;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (active_[i] && basis_[i].lm().divides(lead->first)) {
          red = &basis_[i];
          break;
        }
      }
      if (!red) {
        rem.emplace_back(lead->first, std::move(lead->second));
        work.erase(lead);
        continue;
      }
      if ((++steps & 255) == 0 && tick) tick();
      const Monomial shift = lead->first / red->lm();
      mpz_gcd(g.get_mpz_t(), lead->second.get_mpz_t(), red->lc().get_mpz_t());
      mpz_divexact(a.get_mpz_t(), red->lc().get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), lead->second.get_mpz_t(), g.get_mpz_t());
      if (a < 0) {
        a = -a;
        b = -b;
      }
      if (a != 1) {
        for (auto& kv : work) kv.second *= a;
        for (auto& kv : rem) kv.second *= a;
        mult *= a;
      }
      if (sugar) *sugar = std::max(*sugar, red->sugar + shift.total_degree());
      for (const auto& [m, c] : red->terms) {
        prod = b * c;
        auto [it, inserted] = work.try_emplace(m * shift, Integer(0));
        it->second -= prod;
        if (it->second == 0) work.erase(it);
      }
    }
    return {std::move(rem), mult};
  }

 private:
  const MonomialOrder& order_;
  const std::vector<IPoly>& basis_;
  const std::vector<bool>& active_;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  int sugar;
};

SparsePoly to_rational_monic(const TablePtr& table, const std::vector<std::pair<Monomial, Integer>>& terms) {
  std::vector<SparsePoly::Term> out;
  const Integer& lc = terms.front().second;
  for (const auto& [m, c] : terms) {
    Rational q(c, lc);
    q.canonicalize();
    out.emplace_back(m, q);
  }
  return SparsePoly::from_terms(table, std::move(out));
}

}  // namespace

Monomial leading_monomial(const SparsePoly& f, const MonomialOrder& order) {
  if (f.is_zero()) throw Error(ErrorKind::PreconditionFailed, "zero polynomial has no leading monomial");
  const Monomial* best = &f.terms().front().first;
  for (const auto& t : f.terms()) {
    if (order.greater(t.first, *best)) best = &t.first;
  }
  return *best;
}

SparsePoly s_polynomial(const SparsePoly& f, const SparsePoly& g, const MonomialOrder& order) {
  const Monomial lf = leading_monomial(f, order);
  const Monomial lg = leading_monomial(g, order);
  const Monomial l = lcm(lf, lg);
  const Rational cf = f.coefficient(lf);
  const Rational cg = g.coefficient(lg);
  return f.shifted(l / lf) * Rational(1 / cf) - g.shifted(l / lg) * Rational(1 / cg);
}

GroebnerBasis::GroebnerBasis(TablePtr table, MonomialOrder order, std::vector<SparsePoly> polys, GroebnerStats stats)
    : table_(std::move(table)), order_(std::move(order)), polys_(std::move(polys)), stats_(stats) {
  for (const auto& p : polys_) leading_.push_back(leading_monomial(p, order_));
}

bool GroebnerBasis::is_unit() const { return polys_.size() == 1 && polys_[0].is_constant() && !polys_[0].is_zero(); }

SparsePoly GroebnerBasis::normal_form(const SparsePoly& f) const {
  if (f.is_zero()) return f;
  std::vector<IPoly> basis;
  std::vector<bool> active;
  for (const auto& p : polys_) {
    auto [terms, den] = to_integer(p, order_);
    make_primitive(terms);
    basis.push_back({std::move(terms), 0});
    active.push_back(true);
  }
  auto [terms, den] = to_integer(f, order_);
  Reducer reducer(order_, basis, active);
  auto [rem, mult] = reducer.reduce(terms, nullptr, {});
  std::vector<SparsePoly::Term> out;
  Integer scale = den * mult;
  for (auto& [m, c] : rem) {
    Rational q(c, scale);
    q.canonicalize();
    out.emplace_back(m, q);
  }
  return SparsePoly::from_terms(f.table(), std::move(out));
}

GroebnerBasis groebner_basis(const std::vector<SparsePoly>& generators, const MonomialOrder& order,
                             const GroebnerBudget& budget) {
  if (generators.empty()) throw Error(ErrorKind::PreconditionFailed, "ideal needs at least one generator");
  const TablePtr table = generators.front().table();
  const auto start = Clock::now();
  GroebnerStats stats;

  std::vector<IPoly> basis;
  std::vector<bool> active;
  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto check_time = [&]() {
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > budget.timeout_secs) {
      throw Error(ErrorKind::ResourceBudgetExceeded,
                  "Groebner basis exceeded " + std::to_string(budget.timeout_secs) + " s");
    }
  };

  auto unit_basis = [&]() {
    std::vector<SparsePoly> one{SparsePoly::constant(table, Rational(1))};
    return GroebnerBasis(table, order, std::move(one), stats);
  };

  auto add = [&](IPoly h) {
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      Pair pr{i, k, lcm(basis[i].lm(), h.lm()), 0};
      const int di = pr.lcm.total_degree() - basis[i].lm().total_degree();
      const int dk = pr.lcm.total_degree() - h.lm().total_degree();
      pr.sugar = std::max(basis[i].sugar + di, h.sugar + dk);
      queue.push_back(pr);
      pending.insert({i, k});
    }
    // Elements whose leading monomial is a multiple of the new one stay in the
    // basis for pair bookkeeping but no longer act as reducers once dominated.
    basis.push_back(std::move(h));
    active.push_back(true);
  };

  bool is_unit = false;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    auto [terms, den] = to_integer(g, order);
    make_primitive(terms);
    IPoly ip{std::move(terms), g.total_degree()};
    if (ip.lm().is_one()) is_unit = true;
    add(std::move(ip));
  }
  if (basis.empty()) throw Error(ErrorKind::PreconditionFailed, "all generators are zero");
  if (is_unit) return unit_basis();

  Reducer reducer(order, basis, active);
  while (!queue.empty()) {
    auto best = std::min_element(queue.begin(), queue.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      const int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    Pair pr = *best;
    queue.erase(best);
    pending.erase({pr.i, pr.j});
    ++stats.pairs_considered;
    if (stats.pairs_considered > budget.max_pairs) {
      throw Error(ErrorKind::ResourceBudgetExceeded, "Groebner basis exceeded " + std::to_string(budget.max_pairs) + " pairs");
    }
    check_time();

    const IPoly& fi = basis[pr.i];
    const IPoly& fj = basis[pr.j];
    if (fi.lm().coprime(fj.lm())) continue;  // product criterion
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].lm().divides(pr.lcm)) continue;
      const auto ik = std::minmax(pr.i, k);
      const auto jk = std::minmax(pr.j, k);
      chain = !pending.count({ik.first, ik.second}) && !pending.count({jk.first, jk.second});
    }
    if (chain) continue;
    if (pr.lcm.total_degree() > budget.max_degree) {
      throw Error(ErrorKind::ResourceBudgetExceeded,
                  "Groebner basis exceeded total degree " + std::to_string(budget.max_degree));
    }

    // S-polynomial with integer coefficients.
    Integer g;
    mpz_gcd(g.get_mpz_t(), fi.lc().get_mpz_t(), fj.lc().get_mpz_t());
    const Integer ci = fj.lc() / g;
    const Integer cj = fi.lc() / g;
    const Monomial si = pr.lcm / fi.lm();
    const Monomial sj = pr.lcm / fj.lm();
    WorkPoly sp(OrderGreater{&order});
    for (const auto& [m, c] : fi.terms) sp[m * si] += ci * c;
    for (const auto& [m, c] : fj.terms) {
      auto& slot = sp[m * sj];
      slot -= cj * c;
    }
    std::vector<std::pair<Monomial, Integer>> spoly;
    for (auto& kv : sp) {
      if (kv.second != 0) spoly.emplace_back(kv.first, std::move(kv.second));
    }
    ++stats.pairs_reduced;
    int sugar = pr.sugar;
    auto [rem, mult] = reducer.reduce(spoly, &sugar, check_time);
    if (rem.empty()) {
      ++stats.zero_reductions;
      continue;
    }
    make_primitive(rem);
    IPoly h{std::move(rem), sugar};
    if (h.lm().is_one()) return unit_basis();
    add(std::move(h));
  }

  // Minimal basis: drop elements whose leading monomial is divisible by
  // another one (ties broken by index).
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }
  std::vector<IPoly> minimal;
  for (auto i : keep) minimal.push_back(basis[i]);

  // Inter-reduction of the tails.
  std::vector<IPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<bool> others(minimal.size(), true);
    others[i] = false;
    Reducer tail(order, minimal, others);
    std::vector<std::pair<Monomial, Integer>> t(minimal[i].terms.begin() + 1, minimal[i].terms.end());
    auto [rem, mult] = tail.reduce(t, nullptr, check_time);
    std::vector<std::pair<Monomial, Integer>> full;
    full.emplace_back(minimal[i].lm(), minimal[i].lc() * mult);
    for (auto& kv : rem) full.push_back(std::move(kv));
    make_primitive(full);
    reduced.push_back({std::move(full), minimal[i].sugar});
  }
  std::sort(reduced.begin(), reduced.end(), [&](const IPoly& a, const IPoly& b) { return order.greater(b.lm(), a.lm()); });
  std::vector<SparsePoly> out;
  for (const auto& r : reduced) out.push_back(to_rational_monic(table, r.terms));
  return GroebnerBasis(table, order, std::move(out), stats);
}

// ---------------------------------------------------------------------------

Ideal::Ideal(TablePtr table, std::vector<SparsePoly> generators)
    : table_(std::move(table)), generators_(std::move(generators)) {
  generators_.erase(std::remove_if(generators_.begin(), generators_.end(), [](const SparsePoly& f) { return f.is_zero(); }),
                    generators_.end());
}

const GroebnerBasis& Ideal::basis(const MonomialOrder& order, const GroebnerBudget& budget) const {
  std::lock_guard lock(mutex_);
  for (const auto& [o, b] : cache_) {
    if (o.block_list() == order.block_list()) return *b;
  }
  std::shared_ptr<const GroebnerBasis> b;
  if (generators_.empty()) {
    b = std::make_shared<const GroebnerBasis>(table_, order, std::vector<SparsePoly>{}, GroebnerStats{});
  } else {
    b = std::make_shared<const GroebnerBasis>(groebner_basis(generators_, order, budget));
  }
  cache_.emplace_back(order, b);
  return *b;
}

const GroebnerBasis& Ideal::basis(const GroebnerBudget& budget) const {
  return basis(MonomialOrder::grevlex(table_->size()), budget);
}

bool ideal_member(const SparsePoly& f, const Ideal& ideal, const GroebnerBudget& budget) {
  return ideal.basis(budget).normal_form(f).is_zero();
}

namespace {

MonomialOrder z_last_order(const VarTable& table, std::size_t z) {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i != z) rest.push_back(i);
  }
  return MonomialOrder::blocks({rest, {z}});
}

bool unit_after_rabinowitsch(const GroebnerBasis& gb, const SparsePoly& reduced, std::size_t z,
                             const GroebnerBudget& budget) {
  if (reduced.is_zero()) return true;
  // A nonzero constant lies in the radical only of the unit ideal.
  if (reduced.is_constant()) return gb.is_unit();
  std::vector<SparsePoly> gens = gb.polys();
  const TablePtr& table = reduced.table();
  gens.push_back(SparsePoly::constant(table, Rational(1)) - SparsePoly::variable(table, z) * reduced);
  return groebner_basis(gens, gb.order(), budget).is_unit();
}

}  // namespace

bool radical_member(const SparsePoly& f, const Ideal& ideal, const GroebnerBudget& budget) {
  const VarTable& table = *ideal.table();
  if (table.has_z()) {
    return radical_member_product({f}, ideal, z_last_order(table, table.z()), budget);
  }
  // Adjoin Z as a fresh last variable; existing indices are unchanged.
  auto ext = make_table(VarTable::Spec{.type = table.type(),
                                       .coefficients = table.coefficient_count() > 0,
                                       .xy = table.has_xy(),
                                       .points = table.points(),
                                       .z = true});
  if (ext->size() != table.size() + 1) throw Error(ErrorKind::InternalConsistency, "extended table layout");
  std::vector<std::size_t> mapping(table.size());
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  std::vector<SparsePoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.embed(ext, mapping));
  const Ideal lifted(ext, std::move(gens));
  return radical_member_product({f.embed(ext, mapping)}, lifted, z_last_order(*ext, ext->z()), budget);
}

bool radical_member_product(const std::vector<SparsePoly>& factors, const Ideal& ideal, const MonomialOrder& order,
                            const GroebnerBudget& budget) {
  const VarTable& table = *ideal.table();
  const std::size_t z = table.z();
  for (const auto& g : ideal.generators()) {
    if (g.degree_in(z) > 0) throw Error(ErrorKind::PreconditionFailed, "Z occurs in the ideal");
  }
  const GroebnerBasis& gb = ideal.basis(order, budget);
  if (gb.is_unit()) return true;
  SparsePoly acc = SparsePoly::constant(ideal.table(), Rational(1));
  for (const auto& f : factors) {
    if (f.degree_in(z) > 0) throw Error(ErrorKind::PreconditionFailed, "Z occurs in the tested polynomial");
    acc = gb.normal_form(acc * gb.normal_form(f));
    if (acc.is_zero()) return true;
  }
  return unit_after_rabinowitsch(gb, acc, z, budget);
}

QuotientInfo quotient_dimension(const Ideal& ideal, const GroebnerBudget& budget) {
  QuotientInfo info;
  const std::size_t nv = ideal.table()->size();
  if (ideal.generators().empty()) return info;
  const GroebnerBasis& gb = ideal.basis(budget);
  if (gb.is_unit()) {
    info.finite_dimensional = true;
    return info;
  }
  std::vector<int> bound(nv, -1);
  for (const auto& lm : gb.leading_monomials()) {
    int var = -1;
    int count = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (lm[v]) {
        var = static_cast<int>(v);
        ++count;
      }
    }
    if (count == 1) {
      auto& b = bound[static_cast<std::size_t>(var)];
      b = b < 0 ? lm[static_cast<std::size_t>(var)] : std::min(b, lm[static_cast<std::size_t>(var)]);
    }
  }
  if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return info;
  info.finite_dimensional = true;
  // Enumerate the box, keeping monomials outside the leading ideal.
  Monomial m;
  while (true) {
    bool standard = true;
    for (const auto& lm : gb.leading_monomials()) {
      if (lm.divides(m)) {
        standard = false;
        break;
      }
    }
    if (standard) info.standard_monomials.push_back(m);
    std::size_t v = 0;
    while (v < nv) {
      if (m.e[v] + 1 < bound[v]) {
        ++m.e[v];
        break;
      }
      m.e[v] = 0;
      ++v;
    }
    if (v == nv) break;
  }
  info.dimension = info.standard_monomials.size();
  return info;
}

}  // namespace wsg
