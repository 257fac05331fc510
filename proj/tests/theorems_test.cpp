#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace zerosum;
using testing_support::oracle_group;

namespace {

FiniteAbelianGroup G(const char* name) { return FiniteAbelianGroup::parse(name); }

SweepOptions with_threads(unsigned threads) {
  SweepOptions o;
  o.search.threads = threads;
  return o;
}

}  // namespace

TEST(ResidueSets, LexicographicSubsets) {
  const auto sets = residue_subsets(4, 2);
  ASSERT_EQ(sets.size(), 3U);
  EXPECT_EQ(sets[0], (ResidueSet{1, 2}));
  EXPECT_EQ(sets[2], (ResidueSet{2, 3}));
  EXPECT_EQ(residue_subsets(5, 0).size(), 1U);
  EXPECT_EQ(residue_text({1, 3}), "{1,3}");
}

TEST(ResidueAvoidance, SingleInstances) {
  const auto c2 = G("C2");
  EXPECT_EQ(verify_theorem5(Sequence::parse(c2, "[1 1 0]"), {1}).to_string(), "[1^2]");
  const auto c3 = G("C3");
  EXPECT_EQ(verify_theorem5(Sequence::parse(c3, "[0 1 1 1]"), {2}).to_string(), "[0]");
  EXPECT_THROW(verify_theorem5(Sequence::parse(c3, "[0 1 1 1]"), {1, 2}), PreconditionError);
  EXPECT_THROW(verify_theorem5(Sequence::parse(c3, "[0 1]"), {}), PreconditionError);
  EXPECT_THROW(verify_theorem5(Sequence::parse(G("C6"), "[1^6]"), {}), PreconditionError);
  // With a wrong D the statement can fail; the failure is reported, not hidden.
  EXPECT_THROW(verify_theorem5(Sequence::parse(c3, "[0 1^2]"), {1}, 2), SoundnessAlarm);
}

TEST(ResidueAvoidance, WitnessesOnRandomSequences) {
  const auto g = G("C3xC3");
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto s = testing_support::random_sequence(rng, g, 6);
    const auto w = verify_theorem5(s, {1}, 5);
    EXPECT_TRUE(w.divides(s));
    EXPECT_TRUE(is_zero_sum(w));
    EXPECT_NE(w.length() % 3, 1U);
  }
}

TEST(Sweeps, ResidueAvoidanceCoversTheWholeGrid) {
  const auto r = sweep_theorem5(G("C3"), 2);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.instances_checked, multiset_count(3, 4));
  const auto r5 = sweep_theorem5(G("C5"), 4);
  EXPECT_TRUE(r5.verified());
  EXPECT_EQ(r5.instances_checked, 495U);
  EXPECT_EQ(r5.params["A"].size(), 4U);
  EXPECT_TRUE(sweep_theorem5(G("C2xC2"), 1).verified());
  EXPECT_THROW(sweep_theorem5(G("C6"), 1), PreconditionError);
  EXPECT_THROW(sweep_theorem5(G("C3"), 4), PreconditionError);
}

TEST(Sweeps, NormalStructureAndDispersiveness) {
  const auto r = sweep_theorem3(G("C5"), 4);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.instances_checked, 495U);
  EXPECT_TRUE(sweep_theorem3(G("C2xC4"), 1).verified());
  EXPECT_THROW(sweep_theorem3(G("C3"), 3), PreconditionError);

  const auto c = sweep_corollary7(G("C3"), 2);
  EXPECT_TRUE(c.verified());
  EXPECT_EQ(c.instances_checked, multiset_count(3, 4));
  EXPECT_TRUE(sweep_corollary7(G("C3xC3"), 2).verified());
}

TEST(Sweeps, NormalSequenceCountMatchesOracle) {
  // The theorem3 tally of normal sequences against a direct count.
  const auto g = G("C3xC3");
  const auto r = sweep_theorem3(g, 2);
  const auto og = oracle_group(g);
  const auto elems = og.elements();
  std::uint64_t normal = 0;
  oracle::for_each_multiset(elems.size(), 6, [&](const std::vector<std::size_t>& idx) {
    const auto prof = oracle::subset_profile(og, oracle::pick(elems, idx));
    if (!prof.empty() && *prof.rbegin() <= 2) ++normal;
  });
  EXPECT_EQ(r.stats["normal_sequences"].get<std::uint64_t>(), normal);
  EXPECT_EQ(r.instances_checked, 3003U);
}

TEST(Sweeps, PropertyBMatchesOracle) {
  for (std::int64_t n : {2, 3}) {
    const auto r = property_b(n);
    EXPECT_TRUE(r.verified());
    const auto g = square_group(n);
    const auto og = oracle_group(g);
    const auto elems = og.elements();
    std::uint64_t minimal = 0;
    oracle::for_each_multiset(elems.size(), static_cast<std::size_t>(2 * n - 1),
                              [&](const std::vector<std::size_t>& idx) {
                                if (oracle::minimal_zero_sum(og, oracle::pick(elems, idx))) ++minimal;
                              });
    EXPECT_EQ(r.stats["minimal_zero_sum_sequences"].get<std::uint64_t>(), minimal) << n;
    EXPECT_EQ(r.instances_checked, multiset_count(static_cast<std::uint64_t>(n * n), 2 * n - 1));
  }
  EXPECT_THROW(property_b(1), PreconditionError);
}

TEST(Sweeps, RankTwoExtremalForms) {
  for (const char* name : {"C2xC2", "C2xC4"}) {
    const auto r = sweep_theorem8(G(name));
    EXPECT_TRUE(r.verified()) << name;
    EXPECT_GT(r.stats["forms_generated"].get<std::uint64_t>(), 0U);
  }
  EXPECT_THROW(sweep_theorem8(G("C8")), PreconditionError);
}

TEST(Sweeps, ExtendedZeroSumfreeMinimumLength) {
  const auto g = G("C2xC2");
  const auto r = verify_theorem12(Sequence::parse(g, "[(1,0) (0,1)]"), Sequence::parse(g, "[(1,0)]"));
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.stats["min_zero_sum_length"], 2);
  EXPECT_THROW(verify_theorem12(Sequence::parse(g, "[(1,0) (0,1)]"), Sequence::parse(g, "[(1,1)]")),
               PreconditionError);
  EXPECT_THROW(verify_theorem12(Sequence::parse(g, "[(1,0) (1,0)]"), Sequence::parse(g, "[(1,0)]")),
               PreconditionError);

  const auto sweep = sweep_theorem12(G("C2xC4"), 1);
  EXPECT_TRUE(sweep.verified());
  EXPECT_EQ(sweep.instances_checked, sweep.stats["pairs"].get<std::uint64_t>());
  EXPECT_EQ(sweep.stats["grid_covered"].get<std::uint64_t>(), multiset_count(8, 4));
}

TEST(Sweeps, ExtendedZeroSumfreePairCount) {
  const auto g = G("C3xC3");
  const auto sweep = sweep_theorem12(g, 2);
  EXPECT_TRUE(sweep.verified());
  // pairs: each zero-sumfree T of length 4 with k distinct elements gives k + C(k+1, 2) choices of U
  SequenceFilter zsf;
  zsf.zero_sumfree = true;
  std::uint64_t pairs = 0;
  for (const auto& t : collect_sequences({g, 4, zsf})) {
    const auto k = t.support().size();
    pairs += k + k * (k + 1) / 2;
  }
  EXPECT_EQ(sweep.instances_checked, pairs);
}

TEST(Sweeps, RankTwoAndCyclicNormalStructure) {
  EXPECT_TRUE(sweep_theorem4(G("C2xC4"), 1).verified());
  EXPECT_THROW(sweep_theorem4(G("C2xC4"), 2), PreconditionError);
  for (std::int64_t i = 1; i <= 5; ++i) EXPECT_TRUE(sweep_conjecture1(G("C6"), i).verified()) << i;
  EXPECT_TRUE(sweep_conjecture1(G("C2xC6"), 1).verified());
}

TEST(Sweeps, ResidueAvoidanceGeneralModulus) {
  const auto r = sweep_conjecture10(G("C6"), 2, ResidueSet{1});
  EXPECT_EQ(r.instances_checked, 792U);
  EXPECT_EQ(r.kind, "conjecture");
  SweepOptions wrong;
  wrong.davenport = 2;
  const auto bad = sweep_conjecture10(G("C3"), 2, ResidueSet{1}, wrong);
  EXPECT_FALSE(bad.verified());
  ASSERT_FALSE(bad.counterexamples.empty());
  EXPECT_EQ(bad.counterexamples.front().sequence.to_string(), "[0 1^2]");
}

TEST(Sweeps, ShortZeroSumLengthWindow) {
  const auto r = sweep_conjecture11(G("C3"), 1);
  EXPECT_TRUE(r.verified());
  const auto pinned = sweep_conjecture11(G("C3xC3"), 2, 6);
  EXPECT_TRUE(pinned.verified());
  EXPECT_EQ(pinned.instances_checked, multiset_count(9, 10));
}

TEST(Sweeps, CounterexampleListIsCapped) {
  SweepOptions wrong;
  wrong.davenport = 1;
  wrong.max_counterexamples = 2;
  const auto r = sweep_theorem5(G("C5"), 2, ResidueSet{1}, wrong);
  EXPECT_FALSE(r.verified());
  EXPECT_EQ(r.counterexamples.size(), 2U);
  EXPECT_GT(r.counterexamples_total, 2U);
}

TEST(Sweeps, ThreadCountDoesNotChangeReports) {
  const auto run = [](unsigned threads) {
    const auto o = with_threads(threads);
    std::string out;
    out += to_json(sweep_theorem5(G("C3xC3"), 2, {}, o)).dump();
    out += to_json(sweep_theorem3(G("C2xC4"), 1, o)).dump();
    out += to_json(property_b(3, o)).dump();
    out += to_json(sweep_theorem12(G("C2xC4"), 2, o)).dump();
    SweepOptions wrong = o;
    wrong.davenport = 1;
    out += to_json(sweep_theorem5(G("C5"), 2, ResidueSet{1}, wrong)).dump();
    return out;
  };
  const auto one = run(1);
  EXPECT_EQ(run(2), one);
  EXPECT_EQ(run(8), one);
}

TEST(Sweeps, NodeCeilingRaisesResourceError) {
  SweepOptions o;
  o.search.node_ceiling = 50;
  o.davenport = 5;
  EXPECT_THROW(sweep_theorem5(G("C3xC3"), 2, {}, o), ResourceError);
}
