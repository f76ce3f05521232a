#include "wsg/polyring.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace wsg {

int Monomial::total_degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e[i] > other.e[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e[i] && other.e[i]) return false;
  }
  return true;
}

bool Monomial::is_one() const {
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const int s = a.e[i] + b.e[i];
    if (s > 255) throw Error(ErrorKind::ResourceBudgetExceeded, "exponent overflow (>255)");
    out.e[i] = static_cast<std::uint8_t>(s);
  }
  return out;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.e[i] = std::max(a.e[i], b.e[i]);
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : m.e) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> coefficient_exponents(const TypePQ& t) {
  std::vector<std::pair<int, int>> out;
  for (int mu = 0; mu * t.q() < t.p() * t.q(); ++mu) {
    for (int nu = 0; nu * t.p() + mu * t.q() < t.p() * t.q(); ++nu) out.emplace_back(nu, mu);
  }
  return out;
}

VarTable::VarTable(Spec spec) : type_(spec.type) {
  if ((spec.coefficients || spec.points > 0) && !spec.type) {
    throw Error(ErrorKind::PreconditionFailed, "coefficient variables need a curve type");
  }
  const int p = type_ ? type_->p() : 1;
  const int q = type_ ? type_->q() : 1;
  if (spec.coefficients) {
    coeff_exps_ = wsg::coefficient_exponents(*type_);
    for (auto [nu, mu] : coeff_exps_) {
      names_.push_back("A[" + std::to_string(nu) + "," + std::to_string(mu) + "]");
      weights_.push_back(p * q - nu * p - mu * q);
    }
  }
  if (spec.xy) {
    x_ = names_.size();
    names_.push_back("X");
    weights_.push_back(p);
    y_ = names_.size();
    names_.push_back("Y");
    weights_.push_back(q);
  }
  points_ = spec.points;
  first_point_ = names_.size();
  for (int i = 1; i <= spec.points; ++i) {
    names_.push_back("X" + std::to_string(i));
    weights_.push_back(p);
    names_.push_back("Y" + std::to_string(i));
    weights_.push_back(q);
  }
  if (spec.z) {
    z_ = names_.size();
    names_.push_back("Z");
    weights_.push_back(0);
  }
  if (names_.size() > kMaxVars) {
    throw Error(ErrorKind::ResourceBudgetExceeded,
                "variable table needs " + std::to_string(names_.size()) + " > " + std::to_string(kMaxVars) + " variables");
  }
}

std::optional<std::size_t> VarTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarTable::a(int nu, int mu) const {
  for (std::size_t i = 0; i < coeff_exps_.size(); ++i) {
    if (coeff_exps_[i] == std::pair{nu, mu}) return i;
  }
  throw Error(ErrorKind::BadExponent, "no coefficient A[" + std::to_string(nu) + "," + std::to_string(mu) + "]");
}

std::size_t VarTable::x() const {
  if (!x_) throw Error(ErrorKind::PreconditionFailed, "table has no X");
  return *x_;
}

std::size_t VarTable::y() const {
  if (!y_) throw Error(ErrorKind::PreconditionFailed, "table has no Y");
  return *y_;
}

std::size_t VarTable::point_x(int i) const {
  if (i < 1 || i > points_) throw Error(ErrorKind::PreconditionFailed, "no point variable X" + std::to_string(i));
  return first_point_ + 2 * static_cast<std::size_t>(i - 1);
}

std::size_t VarTable::point_y(int i) const { return point_x(i) + 1; }

std::size_t VarTable::z() const {
  if (!z_) throw Error(ErrorKind::PreconditionFailed, "table has no Z");
  return *z_;
}

TablePtr make_table(VarTable::Spec spec) { return std::make_shared<const VarTable>(spec); }

// ---------------------------------------------------------------------------

MonomialOrder MonomialOrder::grevlex(std::size_t arity) {
  std::vector<std::size_t> all(arity);
  for (std::size_t i = 0; i < arity; ++i) all[i] = i;
  return blocks({all});
}

MonomialOrder MonomialOrder::lex(std::size_t arity) {
  std::vector<std::vector<std::size_t>> bl;
  for (std::size_t i = 0; i < arity; ++i) bl.push_back({i});
  return blocks(std::move(bl));
}

MonomialOrder MonomialOrder::blocks(std::vector<std::vector<std::size_t>> blocks) {
  MonomialOrder o;
  for (auto& b : blocks) {
    if (!b.empty()) o.blocks_.push_back(std::move(b));
  }
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& block : blocks_) {
    int da = 0;
    int db = 0;
    for (auto v : block) {
      da += a.e[v];
      db += b.e[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      if (a.e[*it] != b.e[*it]) return a.e[*it] < b.e[*it] ? 1 : -1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

SparsePoly SparsePoly::constant(TablePtr table, const Rational& value) {
  SparsePoly out(std::move(table));
  if (value != 0) out.terms_.emplace_back(Monomial{}, value);
  return out;
}

SparsePoly SparsePoly::variable(TablePtr table, std::size_t var, int power) {
  if (var >= table->size()) throw Error(ErrorKind::ArityMismatch, "variable index out of range");
  SparsePoly out(std::move(table));
  Monomial m;
  m.e[var] = static_cast<std::uint8_t>(power);
  out.terms_.emplace_back(m, Rational(1));
  return out;
}

SparsePoly SparsePoly::from_terms(TablePtr table, std::vector<Term> terms) {
  SparsePoly out(std::move(table));
  out.terms_ = std::move(terms);
  out.normalize();
  return out;
}

void SparsePoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.second == 0; }),
               merged.end());
  terms_ = std::move(merged);
}

bool SparsePoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

Rational SparsePoly::constant_term() const { return coefficient(Monomial{}); }

Rational SparsePoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Rational(0);
}

int SparsePoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

int SparsePoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.e[var]));
  return d;
}

namespace {

void check_same_table(const SparsePoly& a, const SparsePoly& b) {
  if (a.table() != b.table() && a.table()->size() != b.table()->size()) {
    throw Error(ErrorKind::ArityMismatch, "polynomials live over different variable tables");
  }
}

std::vector<SparsePoly::Term> merge_terms(const std::vector<SparsePoly::Term>& a,
                                          const std::vector<SparsePoly::Term>& b, bool subtract) {
  std::vector<SparsePoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_same_table(*this, o);
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_same_table(*this, o);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  check_same_table(a, b);
  SparsePoly out(a.table());
  if (a.is_zero() || b.is_zero()) return out;
  auto integral = [](const SparsePoly& f) {
    return std::all_of(f.terms_.begin(), f.terms_.end(), [](const SparsePoly::Term& t) { return t.second.get_den() == 1; });
  };
  if (integral(a) && integral(b)) {
    // Integer fast path: no canonicalization per product.
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.size() * b.size() + 16);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ma * mb);
        mpz_addmul(it->second.get_mpz_t(), ca.get_num_mpz_t(), cb.get_num_mpz_t());
      }
    }
    out.terms_.reserve(acc.size());
    for (auto& kv : acc) {
      if (kv.second != 0) out.terms_.emplace_back(kv.first, Rational(kv.second));
    }
    std::sort(out.terms_.begin(), out.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * b.size() * 2 + 16);
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(ma * mb, prod);
      if (!inserted) it->second += prod;
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& kv : acc) {
    if (kv.second != 0) out.terms_.emplace_back(kv.first, std::move(kv.second));
  }
  std::sort(out.terms_.begin(), out.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  if (a.table_->size() != b.table_->size()) return false;
  return a.terms_ == b.terms_;
}

SparsePoly SparsePoly::pow(int k) const {
  SparsePoly result = constant(table_, Rational(1));
  SparsePoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  SparsePoly out(table_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var] == 0) continue;
    Monomial d = m;
    d.e[var] = static_cast<std::uint8_t>(d.e[var] - 1);
    out.terms_.emplace_back(d, c * m.e[var]);
  }
  out.normalize();
  return out;
}

SparsePoly SparsePoly::shifted(const Monomial& m) const {
  SparsePoly out(table_);
  out.terms_.reserve(terms_.size());
  for (const auto& [mm, c] : terms_) out.terms_.emplace_back(mm * m, c);
  out.normalize();
  return out;
}

SparsePoly SparsePoly::substitute(const std::map<std::size_t, Rational>& values) const {
  for (const auto& kv : values) {
    if (kv.first >= table_->size()) throw Error(ErrorKind::ArityMismatch, "substitution variable out of range");
  }
  SparsePoly out(table_);
  out.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    Rational coeff = c;
    for (const auto& [v, val] : values) {
      if (m.e[v] == 0) continue;
      Rational pw;
      mpz_pow_ui(mpq_numref(pw.get_mpq_t()), val.get_num_mpz_t(), m.e[v]);
      mpz_pow_ui(mpq_denref(pw.get_mpq_t()), val.get_den_mpz_t(), m.e[v]);
      coeff *= pw;
      rest.e[v] = 0;
    }
    if (coeff != 0) out.terms_.emplace_back(rest, coeff);
  }
  out.normalize();
  return out;
}

SparsePoly SparsePoly::substitute(std::size_t var, const SparsePoly& value) const {
  check_same_table(*this, value);
  // Group by power of var, then Horner in `value`.
  std::map<int, SparsePoly> by_power;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    const int k = m.e[var];
    rest.e[var] = 0;
    auto it = by_power.try_emplace(k, table_).first;
    it->second.terms_.emplace_back(rest, c);
  }
  SparsePoly result(table_);
  int current = by_power.empty() ? 0 : by_power.rbegin()->first;
  for (int k = current; k >= 0; --k) {
    result = result * value;
    auto it = by_power.find(k);
    if (it != by_power.end()) {
      it->second.normalize();
      result += it->second;
    }
  }
  return result;
}

SparsePoly SparsePoly::embed(TablePtr target, std::span<const std::size_t> mapping) const {
  if (mapping.size() != table_->size()) throw Error(ErrorKind::ArityMismatch, "embedding needs one target per variable");
  SparsePoly out(target);
  out.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial mm;
    for (std::size_t v = 0; v < mapping.size(); ++v) {
      if (m.e[v] == 0) continue;
      if (mapping[v] >= target->size()) throw Error(ErrorKind::ArityMismatch, "embedding target out of range");
      mm.e[mapping[v]] = static_cast<std::uint8_t>(mm.e[mapping[v]] + m.e[v]);
    }
    out.terms_.emplace_back(mm, c);
  }
  out.normalize();
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  const auto order = MonomialOrder::grevlex(table_->size());
  std::vector<const Term*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [&](const Term* a, const Term* b) { return order.greater(a->first, b->first); });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : sorted) {
    const Rational& c = t->second;
    const bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    if (mag != 1 || t->first.is_one()) factors.push_back(wsg::to_string(mag));
    for (std::size_t v = 0; v < table_->size(); ++v) {
      const int e = t->first.e[v];
      if (e == 0) continue;
      factors.push_back(table_->name(v) + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------

int WeightedGrading::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * m.e[i];
  return d;
}

WeightedDegree weighted_degree(const SparsePoly& f, const WeightedGrading& g) {
  WeightedDegree out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const int d = g.degree(m);
    if (first) {
      out.degree = d;
      out.max_degree = d;
      first = false;
    } else {
      if (d != out.degree) out.homogeneous = false;
      out.max_degree = std::max(out.max_degree, d);
    }
  }
  if (!out.homogeneous) out.degree = out.max_degree;
  return out;
}

SparsePoly generic_weierstrass(const TypePQ& t, const TablePtr& table, std::size_t x, std::size_t y) {
  std::vector<SparsePoly::Term> terms;
  Monomial yp;
  yp.e[y] = static_cast<std::uint8_t>(t.p());
  terms.emplace_back(yp, Rational(1));
  Monomial xq;
  xq.e[x] = static_cast<std::uint8_t>(t.q());
  terms.emplace_back(xq, Rational(-1));
  for (auto [nu, mu] : coefficient_exponents(t)) {
    Monomial m;
    m.e[table->a(nu, mu)] = 1;
    m.e[x] = static_cast<std::uint8_t>(m.e[x] + nu);
    m.e[y] = static_cast<std::uint8_t>(m.e[y] + mu);
    terms.emplace_back(m, Rational(1));
  }
  return SparsePoly::from_terms(table, std::move(terms));
}

SparsePoly generic_weierstrass(const TypePQ& t) {
  auto table = make_table({.type = t, .coefficients = true, .xy = true});
  return generic_weierstrass(t, table, table->x(), table->y());
}

std::pair<SparsePoly, SparsePoly> partials(const SparsePoly& f) {
  return {f.derivative(f.table()->x()), f.derivative(f.table()->y())};
}

SparsePoly hessian(const SparsePoly& f, std::size_t x, std::size_t y) {
  const auto fx = f.derivative(x);
  const auto fy = f.derivative(y);
  const auto fxy = fx.derivative(y);
  return fx.derivative(x) * fy.derivative(y) - fxy * fxy;
}

SparsePoly hessian(const SparsePoly& f) { return hessian(f, f.table()->x(), f.table()->y()); }

SparsePoly evaluate(const SparsePoly& f, const std::map<std::string, Rational>& assignment) {
  std::map<std::size_t, Rational> values;
  for (const auto& [name, value] : assignment) {
    auto idx = f.table()->find(name);
    if (!idx) throw Error(ErrorKind::ArityMismatch, "unknown variable '" + name + "'");
    values.emplace(*idx, value);
  }
  return f.substitute(values);
}

}  // namespace wsg
