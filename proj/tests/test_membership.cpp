#include <gtest/gtest.h>

#include <numeric>

#include "wsg/error.hpp"
#include "wsg/membership.hpp"
#include "wsg/simplify.hpp"

using namespace wsg;

namespace {

// Semigroups obtained from <p,q> by closing a subset of its gaps.
std::vector<NumericalSemigroup> closures(const TypePQ& t) {
  const auto gaps = hpq(t).gaps();
  std::vector<NumericalSemigroup> out;
  for (unsigned mask = 0; mask < (1u << gaps.size()); ++mask) {
    std::vector<int> open;
    for (std::size_t i = 0; i < gaps.size(); ++i)
      if (!(mask >> i & 1u)) open.push_back(gaps[i]);
    try {
      out.push_back(NumericalSemigroup::from_gaps(open));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST(Instance, ShapeForNodalCubic) {
  const TypePQ t(2, 3);
  const auto inst = build_instance(t, parse_semigroup("N"));
  EXPECT_EQ(inst.l, 1);
  EXPECT_EQ(inst.closed.size(), 1u);
  EXPECT_TRUE(inst.open.empty());
  EXPECT_EQ(inst.point_equations.size(), 3u);
  EXPECT_TRUE(inst.determinants.empty());
  EXPECT_EQ(inst.hessians.size(), 1u);
  EXPECT_EQ(inst.table->size(), static_cast<std::size_t>(t.n() + 2 * inst.l + 1));
  EXPECT_EQ(inst.generators().size(), 3u);
}

TEST(Instance, DeterminantCountMatchesGapPositions) {
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}, {4, 5}, {3, 7}}) {
    const TypePQ t(p, q);
    for (const auto& h : closures(t)) {
      const auto inst = build_instance(t, h);
      EXPECT_EQ(inst.l + static_cast<int>(inst.open.size()), t.d());
      EXPECT_EQ(h.genus(), static_cast<int>(inst.open.size()));
      int expected = 0;
      for (std::size_t k = 0; k < inst.open.size(); ++k) expected += inst.open[k].index - static_cast<int>(k + 1);
      EXPECT_EQ(static_cast<int>(inst.determinants.size()), expected) << h.to_string();
      EXPECT_EQ(inst.generators().size(), 3 * static_cast<std::size_t>(inst.l) + inst.determinants.size());
      if (h == greatest_gaps_closure(t, inst.l)) EXPECT_TRUE(inst.determinants.empty());
    }
  }
}

TEST(Instance, SingleDeterminantCondition) {
  const auto inst = build_instance(TypePQ(4, 5), NumericalSemigroup::from_generators({4, 5, 6}));
  EXPECT_EQ(inst.l, 2);
  ASSERT_EQ(inst.determinants.size(), 1u);
  EXPECT_EQ(inst.determinants[0].m, 1);
  const auto seven = build_instance(TypePQ(3, 7), NumericalSemigroup::from_generators({3, 4, 7}));
  EXPECT_FALSE(seven.determinants.empty());
}

TEST(Instance, RejectsIncompatibleSemigroup) {
  try {
    build_instance(TypePQ(3, 4), NumericalSemigroup::from_generators({2, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleSemigroup);
  }
}

TEST(Decide, NodalCubic) {
  const auto v = decide(build_instance(TypePQ(2, 3), parse_semigroup("N")));
  EXPECT_EQ(v.outcome, Outcome::IsWeierstrass);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_GE(v.minors_tested, 1u);
  EXPECT_EQ(v.minors_total, 4u);
}

TEST(Decide, OneNodeQuintic) {
  const auto v = decide(build_instance(TypePQ(2, 5), NumericalSemigroup::from_generators({2, 3})));
  EXPECT_EQ(v.outcome, Outcome::IsWeierstrass);
  EXPECT_TRUE(v.witness.has_value());
}

TEST(Decide, SmoothCaseIsTrivial) {
  const TypePQ t(3, 5);
  const auto v = decide(build_instance(t, hpq(t)));
  EXPECT_EQ(v.outcome, Outcome::IsWeierstrass);
}

TEST(Decide, BudgetGivesInconclusive) {
  const auto v = decide(build_instance(TypePQ(3, 4), NumericalSemigroup::from_generators({2, 3})));
  EXPECT_EQ(v.outcome, Outcome::Inconclusive);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_FALSE(v.reason.empty());
  MembershipBudget tight;
  tight.max_minors = 0;
  const auto w = decide(build_instance(TypePQ(2, 3), parse_semigroup("N")), tight);
  EXPECT_EQ(w.outcome, Outcome::Inconclusive);
}

TEST(CrossValidate, PipelineWitnessPasses) {
  const TypePQ t(3, 4);
  const auto r = greatest_gaps_pipeline(t, 1);
  const auto inst = build_instance(t, r.target);
  const auto cc = cross_validate(inst, r.simplified.beta, r.simplified.kept_nodes);
  EXPECT_TRUE(cc.passed);
  EXPECT_TRUE(cc.failures.empty());
}

TEST(CrossValidate, ExactNodalCubicPasses) {
  const TypePQ t(2, 3);
  const auto c = Curve::exact(t, std::map<std::pair<int, int>, Rational>{{{2, 0}, Rational(-1)}});
  const auto cc = cross_validate(build_instance(t, parse_semigroup("N")), c, singular_points(c).nodes);
  EXPECT_TRUE(cc.passed);
}

TEST(CrossValidate, ExtraNodesFail) {
  const TypePQ t(3, 4);
  const auto lc = lissajous_curve(t);
  NodeSet one;
  one.exactness = lc.nodes.exactness;
  one.points.push_back(lc.nodes.points[0]);
  const auto cc = cross_validate(build_instance(t, greatest_gaps_closure(t, 1)), lc.curve, one);
  EXPECT_FALSE(cc.passed);
  EXPECT_FALSE(cc.failures.empty());
}

TEST(Precondition, Examples) {
  EXPECT_FALSE(precondition_check(TypePQ(3, 4), NumericalSemigroup::from_generators({3, 4, 5})).ok);
  EXPECT_TRUE(precondition_check(TypePQ(7, 8), NumericalSemigroup::from_generators({3, 4, 5})).ok);
  EXPECT_TRUE(precondition_check(TypePQ(2, 3), parse_semigroup("N")).ok);
}
