#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "wsg/error.hpp"
#include "wsg/semigroup.hpp"

using namespace wsg;

namespace {

// Gaps of <p,q> by brute enumeration of x p + y q.
std::vector<int> enumerate_gaps(int p, int q) {
  const int c = (p - 1) * (q - 1);
  std::set<int> reps;
  for (int x = 0; x <= c; ++x) {
    for (int y = 0; y <= c; ++y) reps.insert(x * p + y * q);
  }
  std::vector<int> gaps;
  for (int v = 1; v < c; ++v) {
    if (!reps.count(v)) gaps.push_back(v);
  }
  return gaps;
}

}  // namespace

TEST(TypePQ, RejectsBadTypes) {
  EXPECT_THROW(TypePQ(1, 3), Error);
  EXPECT_THROW(TypePQ(3, 3), Error);
  EXPECT_THROW(TypePQ(2, 4), Error);
  try {
    TypePQ(4, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadType);
  }
  const TypePQ t(3, 5);
  EXPECT_EQ(t.d(), 4);
  EXPECT_EQ(t.c(), 8);
  EXPECT_EQ(t.n(), 11);
}

TEST(Hpq, SmallTypes) {
  auto h = hpq(TypePQ(2, 3));
  EXPECT_EQ(h.gaps(), std::vector<int>({1}));
  EXPECT_EQ(h.genus(), 1);
  EXPECT_EQ(h.conductor(), 2);

  h = hpq(TypePQ(3, 4));
  EXPECT_EQ(h.gaps(), std::vector<int>({1, 2, 5}));
  EXPECT_EQ(h.conductor(), 6);

  h = hpq(TypePQ(3, 5));
  EXPECT_EQ(h.gaps(), std::vector<int>({1, 2, 4, 7}));
  EXPECT_EQ(h.genus(), 4);
  EXPECT_EQ(h.conductor(), 8);
  EXPECT_TRUE(h.is_symmetric());
}

TEST(Hpq, AllTypesUpToTwelve) {
  for (int q = 3; q <= 12; ++q) {
    for (int p = 2; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const TypePQ t(p, q);
      const auto h = hpq(t);
      EXPECT_EQ(h.gaps(), enumerate_gaps(p, q)) << p << "," << q;
      EXPECT_EQ(h.genus(), t.d());
      EXPECT_EQ(h.conductor(), t.c());
      EXPECT_TRUE(h.is_symmetric());
      for (const auto& g : gap_descriptors(t)) {
        EXPECT_EQ(g.gamma, t.c() - 1 - (g.a * p + g.b * q));
        EXPECT_FALSE(h.contains(g.gamma));
      }
      for (int l = 0; l <= t.d(); ++l) EXPECT_EQ(greatest_gaps_closure(t, l).genus(), t.d() - l);
    }
  }
}

TEST(GapDescriptors, Coordinates) {
  auto g = gap_descriptors(TypePQ(2, 3));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], (GapDescriptor{1, 0, 0, 1}));

  g = gap_descriptors(TypePQ(3, 4));
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], (GapDescriptor{1, 0, 1, 1}));
  EXPECT_EQ(g[1], (GapDescriptor{2, 1, 0, 2}));
  EXPECT_EQ(g[2], (GapDescriptor{5, 0, 0, 3}));

  g = gap_descriptors(TypePQ(3, 5));
  EXPECT_EQ(g.back(), (GapDescriptor{7, 0, 0, 4}));
}

TEST(CloseGaps, ValidAndInvalid) {
  const auto h35 = hpq(TypePQ(3, 5));
  const auto closed = close_gaps(h35, {4, 7});
  EXPECT_EQ(closed.gaps(), std::vector<int>({1, 2}));
  EXPECT_EQ(closed.genus(), 2);
  EXPECT_EQ(closed.generators(), std::vector<int>({3, 4, 5}));

  try {
    close_gaps(h35, {2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASemigroup);
    EXPECT_NE(std::string(e.what()).find("2+2=4"), std::string::npos);
  }
  EXPECT_EQ(close_gaps(h35, {}), h35);
  EXPECT_THROW(close_gaps(h35, {3}), Error);
}

TEST(CloseGaps, GenusDropsByClosedCount) {
  const TypePQ t(4, 7);
  const auto h = hpq(t);
  const auto& gaps = h.gaps();
  // Every subset of the gaps that yields a semigroup lowers the genus by its size.
  const std::size_t k = gaps.size();
  int valid = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::set<int> pick;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) pick.insert(gaps[i]);
    }
    try {
      const auto out = close_gaps(h, pick);
      EXPECT_EQ(out.genus(), h.genus() - static_cast<int>(pick.size()));
      ++valid;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotASemigroup);
    }
  }
  EXPECT_GT(valid, static_cast<int>(k));
}

TEST(GreatestGaps, Examples) {
  EXPECT_EQ(greatest_gaps_closure(TypePQ(3, 4), 1), NumericalSemigroup::from_generators({3, 4, 5}));
  EXPECT_EQ(greatest_gaps_closure(TypePQ(3, 5), 2).gaps(), std::vector<int>({1, 2}));
  EXPECT_EQ(greatest_gaps_closure(TypePQ(4, 7), 9), NumericalSemigroup::naturals());
  EXPECT_THROW(greatest_gaps_closure(TypePQ(3, 4), 4), Error);
}

TEST(MinimalGenerators, Examples) {
  EXPECT_EQ(minimal_generators(NumericalSemigroup::naturals()), std::vector<int>({1}));
  EXPECT_EQ(minimal_generators(hpq(TypePQ(3, 5))), std::vector<int>({3, 5}));
  EXPECT_EQ(minimal_generators(NumericalSemigroup::from_generators({6, 4, 9, 8})), std::vector<int>({4, 6, 9}));
}

TEST(Parse, Literals) {
  EXPECT_EQ(parse_semigroup("<3,5>"), hpq(TypePQ(3, 5)));
  EXPECT_EQ(parse_semigroup("<3,5>+{4,7}").gaps(), std::vector<int>({1, 2}));
  EXPECT_EQ(parse_semigroup(" gen{ 3, 4, 5 } "), greatest_gaps_closure(TypePQ(3, 4), 1));
  EXPECT_EQ(parse_semigroup("gen{1}"), NumericalSemigroup::naturals());
  EXPECT_EQ(parse_semigroup("<4,5,6>").gaps(), std::vector<int>({1, 2, 3, 7}));
  EXPECT_EQ(parse_semigroup("gaps{1,2,3,7}"), parse_semigroup("<4,5,6>"));
  EXPECT_EQ(parse_semigroup("N"), NumericalSemigroup::naturals());
  EXPECT_THROW(parse_semigroup("gaps{2}"), Error);
  EXPECT_THROW(parse_semigroup("gen{2,4}"), Error);
  EXPECT_THROW(parse_semigroup("(3,5)"), Error);
  EXPECT_THROW(parse_semigroup("<3,5>+{2}"), Error);
  EXPECT_EQ(NumericalSemigroup::from_generators({3, 4, 5}).to_string(), "gen{3,4,5}");
}

TEST(ClosedGaps, Coordinates) {
  const TypePQ t(3, 5);
  const auto closed = closed_gaps(t, parse_semigroup("<3,5>+{4,7}"));
  ASSERT_EQ(closed.size(), 2u);
  EXPECT_EQ(closed[0].gamma, 4);
  EXPECT_EQ(closed[1].gamma, 7);
  EXPECT_EQ(closed[1].a, 0);
}
