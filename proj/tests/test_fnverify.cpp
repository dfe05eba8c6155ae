#include <gtest/gtest.h>

#include "jetvar/fnverify.hpp"
#include "test_support.hpp"

using namespace jetvar;

namespace {

void expect_passes(const IdentityReport& r) {
  EXPECT_TRUE(r.verdict) << r.name << " n=" << r.n << " r=" << r.r << " dev=" << r.max_dev;
  EXPECT_LT(r.max_dev, 1e-9) << r.name;
  EXPECT_FALSE(r.cases.empty()) << r.name;
}

}  // namespace

TEST(SpaceIdentities, HoldOnSmallSpaces) {
  for (int n : {2, 3})
    for (int r : {1, 2}) {
      const auto reports = verify_space_identities(JetSpace(n, r), 20, 5);
      ASSERT_EQ(reports.size(), 5u);
      for (const IdentityReport& rep : reports) {
        if (rep.name == "cacb") continue;
        expect_passes(rep);
      }
    }
}

TEST(LiouvilleBracket, DirectComputationPicksCondition) {
  const IdentityReport r = verify_cacb(JetSpace(2, 3), 20, 1);
  EXPECT_EQ(r.condition_variant, "alpha+beta-1 <= r");
  ASSERT_EQ(r.variants.size(), 2u);
  double good = -1.0;
  double other = -1.0;
  for (const auto& [cond, dev] : r.variants) (cond == "alpha+beta-1 <= r" ? good : other) = dev;
  EXPECT_LT(good, 1e-12);
  // The competing condition drops nonzero brackets, so it must be caught.
  EXPECT_GT(other, 1e-3);
}

TEST(LiouvilleBracket, ConditionsCoincideAtFirstOrder) {
  const IdentityReport r = verify_cacb(JetSpace(3, 1), 20, 1);
  EXPECT_EQ(r.condition_variant, "both");
}

TEST(SemisprayIdentities, HoldForExplicitSemispray) {
  const JetSpace space(2, 3);
  const Semispray s = random_semispray(space, 99);
  expect_passes(verify_cas(space, s, 15, 3));
  expect_passes(verify_jasjb(space, s, 15, 3));
  expect_passes(verify_isjbt(space, s, 15, 3));
}

TEST(RandomData, DeterministicInSeed) {
  const JetSpace space(2, 2);
  const Semispray a = random_semispray(space, 4);
  const Semispray b = random_semispray(space, 4);
  const Semispray c = random_semispray(space, 5);
  EXPECT_EQ(a.coefficient(1), b.coefficient(1));
  EXPECT_NE(a.coefficient(1), c.coefficient(1));
  SampleRng r1(3);
  SampleRng r2(3);
  const SemiBasicForm t1 = random_semi_basic(space, 2, r1);
  const SemiBasicForm t2 = random_semi_basic(space, 2, r2);
  EXPECT_EQ(t1.order, 2);
  for (int a = 0; a < space.dim(); ++a) EXPECT_EQ(t1.form[a], t2.form[a]);
  for (const Expr& e : semi_basic_violation(t1.form, 2)) EXPECT_TRUE(e.is_zero());
}

TEST(Reconstruction, HoldsForBothWorkedLagrangians) {
  const Metric g = jetvar::testing::warped();
  for (const Lagrangian& l : {build_l1(g), build_l2(g)}) {
    expect_passes(verify_tabg(l, 20, 8));
    expect_passes(verify_ictl(l, 20, 8));
  }
}

TEST(Reports, RepeatableUnderSameSeed) {
  const JetSpace space(3, 2);
  const IdentityReport a = verify_jasjb(space, 10, 21);
  const IdentityReport b = verify_jasjb(space, 10, 21);
  EXPECT_EQ(a.max_dev, b.max_dev);
  ASSERT_EQ(a.cases.size(), b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    EXPECT_EQ(a.cases[i].params, b.cases[i].params);
    EXPECT_EQ(a.cases[i].max_dev, b.cases[i].max_dev);
  }
}
