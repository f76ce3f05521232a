#include "wsg/semigroup.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "wsg/error.hpp"

namespace wsg {

TypePQ::TypePQ(int p, int q) : p_(p), q_(q) {
  if (p < 2 || q <= p) {
    throw Error(ErrorKind::BadType, "need 1 < p < q, got p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorKind::BadType, "gcd(" + std::to_string(p) + "," + std::to_string(q) + ") != 1");
  }
}

NumericalSemigroup::NumericalSemigroup(std::vector<int> gaps) : gaps_(std::move(gaps)) {
  std::sort(gaps_.begin(), gaps_.end());
  gaps_.erase(std::unique(gaps_.begin(), gaps_.end()), gaps_.end());
  if (!gaps_.empty() && gaps_.front() <= 0) {
    throw Error(ErrorKind::NotASemigroup, "gaps must be positive integers");
  }
  conductor_ = gaps_.empty() ? 0 : gaps_.back() + 1;
  member_.assign(static_cast<std::size_t>(conductor_), true);
  for (int g : gaps_) member_[static_cast<std::size_t>(g)] = false;

  for (int x = 1; x < conductor_; ++x) {
    if (!member_[static_cast<std::size_t>(x)]) continue;
    for (int y = x; x + y < conductor_; ++y) {
      if (member_[static_cast<std::size_t>(y)] && !member_[static_cast<std::size_t>(x + y)]) {
        throw Error(ErrorKind::NotASemigroup, std::to_string(x) + "+" + std::to_string(y) + "=" +
                                                  std::to_string(x + y) + " missing");
      }
    }
  }

  // Minimal generators: members that are not sums of two nonzero members.
  // Beyond conductor + m1 every member m is m1 + (m - m1) with both members.
  int m1 = 1;
  while (!contains(m1)) ++m1;
  for (int m = m1; m < std::max(conductor_, 1) + m1; ++m) {
    if (!contains(m)) continue;
    bool reducible = false;
    for (int x = m1; x <= m / 2 && !reducible; ++x) {
      reducible = contains(x) && contains(m - x);
    }
    if (!reducible) generators_.push_back(m);
  }
}

NumericalSemigroup NumericalSemigroup::from_gaps(std::vector<int> gaps) {
  return NumericalSemigroup(std::move(gaps));
}

NumericalSemigroup NumericalSemigroup::naturals() { return NumericalSemigroup({}); }

NumericalSemigroup NumericalSemigroup::from_generators(std::vector<int> generators) {
  generators.erase(std::remove(generators.begin(), generators.end(), 0), generators.end());
  if (generators.empty()) throw Error(ErrorKind::NotASemigroup, "no nonzero generators");
  int g = 0;
  for (int x : generators) {
    if (x < 0) throw Error(ErrorKind::NotASemigroup, "negative generator");
    g = std::gcd(g, x);
  }
  if (g != 1) throw Error(ErrorKind::NotASemigroup, "generators have gcd " + std::to_string(g) + " (not cofinite)");
  std::sort(generators.begin(), generators.end());
  // Frobenius number < (a_1 - 1)(a_k - 1), so this bound covers all gaps.
  const int bound = generators.front() * generators.back() + generators.back();
  std::vector<bool> member(static_cast<std::size_t>(bound) + 1, false);
  member[0] = true;
  for (int x = 1; x <= bound; ++x) {
    for (int gen : generators) {
      if (gen <= x && member[static_cast<std::size_t>(x - gen)]) {
        member[static_cast<std::size_t>(x)] = true;
        break;
      }
    }
  }
  std::vector<int> gaps;
  for (int x = 1; x <= bound; ++x) {
    if (!member[static_cast<std::size_t>(x)]) gaps.push_back(x);
  }
  return NumericalSemigroup(std::move(gaps));
}

bool NumericalSemigroup::contains(int x) const noexcept {
  if (x < 0) return false;
  if (x >= conductor_) return true;
  return member_[static_cast<std::size_t>(x)];
}

bool NumericalSemigroup::is_symmetric() const {
  // x is a gap iff c - 1 - x is a member.
  for (int x = 0; x < conductor_; ++x) {
    if (contains(x) == contains(conductor_ - 1 - x)) return false;
  }
  return true;
}

std::string NumericalSemigroup::to_string() const {
  std::ostringstream os;
  os << "gen{";
  for (std::size_t i = 0; i < generators_.size(); ++i) os << (i ? "," : "") << generators_[i];
  os << "}";
  return os.str();
}

NumericalSemigroup hpq(const TypePQ& t) { return NumericalSemigroup::from_generators({t.p(), t.q()}); }

std::vector<GapDescriptor> gap_descriptors(const TypePQ& t) {
  const int p = t.p();
  const int q = t.q();
  const int c = t.c();
  std::vector<GapDescriptor> out;
  for (int b = 0; b * q <= c - 1; ++b) {
    for (int a = 0; a * p + b * q <= c - 1; ++a) {
      out.push_back({c - 1 - (a * p + b * q), a, b, 0});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.gamma < y.gamma; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i) + 1;
  if (static_cast<int>(out.size()) != t.d()) {
    throw Error(ErrorKind::InternalConsistency, "gap count differs from (p-1)(q-1)/2");
  }
  return out;
}

NumericalSemigroup close_gaps(const NumericalSemigroup& h0, const std::set<int>& gammas) {
  for (int g : gammas) {
    if (h0.contains(g)) {
      throw Error(ErrorKind::NotASemigroup, std::to_string(g) + " is not a gap of the input semigroup");
    }
  }
  std::vector<int> gaps;
  for (int g : h0.gaps()) {
    if (!gammas.count(g)) gaps.push_back(g);
  }
  return NumericalSemigroup::from_gaps(std::move(gaps));
}

NumericalSemigroup greatest_gaps_closure(const TypePQ& t, int l) {
  if (l < 0 || l > t.d()) {
    throw Error(ErrorKind::PreconditionFailed, "l must lie in [0, d]");
  }
  const auto h = hpq(t);
  std::set<int> top(h.gaps().end() - l, h.gaps().end());
  try {
    auto out = close_gaps(h, top);
    if (out.genus() != t.d() - l) throw Error(ErrorKind::InternalConsistency, "genus after closure");
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InternalConsistency) throw;
    throw Error(ErrorKind::InternalConsistency, std::string("closing greatest gaps failed: ") + e.what());
  }
}

std::vector<int> minimal_generators(const NumericalSemigroup& h) { return h.generators(); }

std::vector<GapDescriptor> closed_gaps(const TypePQ& t, const NumericalSemigroup& h) {
  std::vector<GapDescriptor> out;
  for (const auto& g : gap_descriptors(t)) {
    if (h.contains(g.gamma)) out.push_back(g);
  }
  return out;
}

namespace {

std::vector<int> parse_int_list(std::string_view body, std::string_view whole) {
  std::vector<int> out;
  std::string item;
  auto flush = [&]() {
    if (item.empty()) throw Error(ErrorKind::ParseError, "empty list item in '" + std::string(whole) + "'");
    out.push_back(std::stoi(item));
    item.clear();
  };
  for (char ch : body) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == ',') {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      item.push_back(ch);
    } else {
      throw Error(ErrorKind::ParseError, "unexpected '" + std::string(1, ch) + "' in '" + std::string(whole) + "'");
    }
  }
  if (!item.empty() || !out.empty()) flush();
  return out;
}

}  // namespace

NumericalSemigroup parse_semigroup(std::string_view literal) {
  std::string s;
  for (char ch : literal) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto bad = [&]() { return Error(ErrorKind::ParseError, "bad semigroup literal '" + std::string(literal) + "'"); };
  if (s == "N" || s == "naturals") return NumericalSemigroup::naturals();
  if (s.rfind("gaps{", 0) == 0) {
    if (s.back() != '}') throw bad();
    return NumericalSemigroup::from_gaps(parse_int_list(std::string_view(s).substr(5, s.size() - 6), literal));
  }
  if (s.rfind("gen{", 0) == 0) {
    if (s.back() != '}') throw bad();
    return NumericalSemigroup::from_generators(parse_int_list(std::string_view(s).substr(4, s.size() - 5), literal));
  }
  if (s.empty() || s.front() != '<') throw bad();
  const auto close = s.find('>');
  if (close == std::string::npos) throw bad();
  const auto pq = parse_int_list(std::string_view(s).substr(1, close - 1), literal);
  std::string_view rest = std::string_view(s).substr(close + 1);
  if (pq.size() != 2) {
    if (!rest.empty()) throw bad();
    return NumericalSemigroup::from_generators(pq);
  }
  const TypePQ t(pq[0], pq[1]);
  auto h = hpq(t);
  if (rest.empty()) return h;
  if (rest.substr(0, 2) != "+{" || rest.back() != '}') throw bad();
  const auto list = parse_int_list(rest.substr(2, rest.size() - 3), literal);
  return close_gaps(h, std::set<int>(list.begin(), list.end()));
}

}  // namespace wsg
