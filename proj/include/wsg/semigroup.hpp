#pragma once

// Numerical semigroups, the semigroup <p,q> of a curve type and the gaps of
// <p,q> with their monomial coordinates.

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wsg {

/// Coprime pair 1 < p < q fixing the Newton polygon Y^p - X^q.
class TypePQ {
 public:
  TypePQ(int p, int q);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  /// Number of gaps of <p,q>, also the maximal node count.
  int d() const noexcept { return (p_ - 1) * (q_ - 1) / 2; }
  /// Conductor of <p,q>, also the rank of the relation module.
  int c() const noexcept { return (p_ - 1) * (q_ - 1); }
  /// Number of free coefficients of a normed polynomial of this type.
  int n() const noexcept { return (p_ + 1) * (q_ + 1) / 2 - 1; }

  friend bool operator==(const TypePQ&, const TypePQ&) = default;

 private:
  int p_;
  int q_;
};

/// A gap of <p,q> written as gamma = c - 1 - (a p + b q).
struct GapDescriptor {
  int gamma = 0;
  int a = 0;
  int b = 0;
  int index = 0;  // 1-based rank in ascending gamma order

  friend bool operator==(const GapDescriptor&, const GapDescriptor&) = default;
};

class NumericalSemigroup {
 public:
  /// The semigroup generated by `generators`; their gcd must be 1.
  static NumericalSemigroup from_generators(std::vector<int> generators);
  /// The complement of `gaps` in the naturals; throws NotASemigroup when that
  /// set is not additively closed.
  static NumericalSemigroup from_gaps(std::vector<int> gaps);
  static NumericalSemigroup naturals();

  bool contains(int x) const noexcept;
  const std::vector<int>& gaps() const noexcept { return gaps_; }
  const std::vector<int>& generators() const noexcept { return generators_; }
  int genus() const noexcept { return static_cast<int>(gaps_.size()); }
  int conductor() const noexcept { return conductor_; }
  bool is_symmetric() const;

  /// Literal form, "gen{3,4,5}".
  std::string to_string() const;

  friend bool operator==(const NumericalSemigroup& a, const NumericalSemigroup& b) {
    return a.gaps_ == b.gaps_;
  }

 private:
  explicit NumericalSemigroup(std::vector<int> gaps);

  std::vector<int> gaps_;
  std::vector<bool> member_;  // indices [0, conductor)
  int conductor_ = 0;
  std::vector<int> generators_;
};

NumericalSemigroup hpq(const TypePQ& t);

/// The d gaps of <p,q> in ascending gamma order.
std::vector<GapDescriptor> gap_descriptors(const TypePQ& t);

/// H0 with the given gaps turned into members.
NumericalSemigroup close_gaps(const NumericalSemigroup& h0, const std::set<int>& gammas);

/// <p,q> with its l greatest gaps closed.
NumericalSemigroup greatest_gaps_closure(const TypePQ& t, int l);

std::vector<int> minimal_generators(const NumericalSemigroup& h);

/// Parses "<p,q>", "<p,q>+{g1,g2}" (gaps closed), "<a,b,c>" or "gen{a,b,c}"
/// (generators), "gaps{g1,g2}" and "N".
NumericalSemigroup parse_semigroup(std::string_view literal);

/// Gaps of <p,q> that are members of `h`, ascending.
std::vector<GapDescriptor> closed_gaps(const TypePQ& t, const NumericalSemigroup& h);

}  // namespace wsg
