#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace zerosum;

namespace {
FiniteAbelianGroup G(const char* name) { return FiniteAbelianGroup::parse(name); }
}  // namespace

TEST(Schmid, FormIOverC2xC2) {
  const auto g = G("C2xC2");
  const SchmidFormI f{g.element({1, 0}), g.element({0, 1}), 1, {0, 1}};
  const auto s = generate_schmid(g, f);
  EXPECT_EQ(s, Sequence::parse(g, "[(1,0) (0,1) (1,1)]"));
  EXPECT_TRUE(is_minimal_zero_sum(s));
  EXPECT_EQ(static_cast<std::int64_t>(s.length()), RankTwoShape::of(g).davenport());
}

TEST(Schmid, FormIIOverC2xC4) {
  const auto g = G("C2xC4");
  const SchmidFormII f{1, g.element({0, 1}), g.element({1, 1}), {0, 0, 0, 1}};
  const auto s = generate_schmid(g, f);
  EXPECT_EQ(s.length(), 5U);
  EXPECT_TRUE(is_minimal_zero_sum(s));
  const auto back = match_schmid(s);
  ASSERT_TRUE(back);
  EXPECT_EQ(generate_schmid(g, *back), s);
}

TEST(Schmid, RejectsInvalidForms) {
  const auto g = G("C2xC4");
  // not a basis
  EXPECT_THROW(generate_schmid(g, SchmidFormI{g.element({0, 2}), g.element({0, 1}), 1, {1, 0, 0, 0}}),
               PreconditionError);
  // ord(e_2) must be mn = 4
  EXPECT_THROW(generate_schmid(g, SchmidFormI{g.element({0, 1}), g.element({1, 0}), 1, {1, 0}}), PreconditionError);
  // multiplier sum must be -1 mod ord(e_1)
  EXPECT_THROW(generate_schmid(g, SchmidFormI{g.element({1, 0}), g.element({0, 1}), 1, {0, 0, 0, 0}}),
               PreconditionError);
  EXPECT_THROW(generate_schmid(g, SchmidFormI{g.element({1, 0}), g.element({0, 1}), 3, {1, 0, 0, 0}}),
               PreconditionError);
  // form II: multipliers sum to m - 1 = 1, s within [1, n]
  EXPECT_THROW(generate_schmid(g, SchmidFormII{1, g.element({0, 1}), g.element({1, 1}), {1, 1, 0, 0}}),
               PreconditionError);
  EXPECT_THROW(generate_schmid(g, SchmidFormII{3, g.element({0, 1}), g.element({1, 1}), {}}), PreconditionError);
  // s = 2 needs m g_1 = m g_2
  EXPECT_THROW(generate_schmid(g, SchmidFormII{2, g.element({1, 0}), g.element({0, 1}), {1, 0}}),
               PreconditionError);
  EXPECT_THROW(generate_schmid(G("C8"), SchmidFormII{1, {{0}}, {{1}}, {}}), PreconditionError);
}

TEST(Schmid, EveryFormIsMaximalMinimalAndRoundTrips) {
  for (const char* name : {"C2xC2", "C2xC4", "C3xC3", "C2xC6", "C4xC4", "C2xC8"}) {
    const auto g = G(name);
    const auto d = RankTwoShape::of(g).davenport();
    std::uint64_t forms = 0;
    std::set<Sequence> seen;
    visit_schmid_forms(g, [&](const SchmidForm& form) {
      ++forms;
      const auto s = generate_schmid(g, form);
      EXPECT_EQ(static_cast<std::int64_t>(s.length()), d);
      EXPECT_TRUE(is_minimal_zero_sum(s)) << describe(g, form);
      if (!seen.insert(s).second) return;
      const auto back = match_schmid(s);
      ASSERT_TRUE(back) << describe(g, form);
      EXPECT_EQ(generate_schmid(g, *back), s);
    });
    EXPECT_GT(forms, 0U) << name;
  }
}

TEST(Schmid, MatchRejectsOtherSequences) {
  const auto g = G("C3xC3");
  // right length but not a minimal zero-sum sequence
  EXPECT_FALSE(match_schmid(Sequence::parse(g, "[(1,0)^3 (0,1)^2]")));
  EXPECT_FALSE(match_schmid(Sequence::parse(g, "[0 (1,0)^4]")));
  EXPECT_THROW(match_schmid(Sequence::parse(g, "[(1,0)^3]")), PreconditionError);
}

TEST(Schmid, DescribeIsStable) {
  const auto g = G("C2xC2");
  EXPECT_EQ(describe(g, SchmidFormI{g.element({1, 0}), g.element({0, 1}), 1, {0, 1}}),
            "form I: e1=(1,0) e2=(0,1) j=1 x=0,1");
}
