#include <gtest/gtest.h>

#include "cloudlab/cloud_format.hpp"
#include "cloudlab/datasets.hpp"
#include "cloudlab/errors.hpp"
#include "cloudlab/states.hpp"
#include "oracles.hpp"

using namespace cloudlab;

namespace {

Cloud cloud(const char* text) { return parse_cloud(text); }

TEST(TwoValuedState, ParseAndPrint) {
  const TwoValuedState s = TwoValuedState::parse("01-");
  EXPECT_TRUE(s.is_false(0));
  EXPECT_TRUE(s.is_true(1));
  EXPECT_FALSE(s.is_defined(2));
  EXPECT_EQ(s.to_string(), "01-");
  EXPECT_EQ(s.defined_count(), 2U);
  EXPECT_FALSE(s.is_total());
  EXPECT_THROW(TwoValuedState::parse("0x"), std::exception);

  const Cloud c = cloud("context a b c\n");
  const TwoValuedState seed = TwoValuedState::parse_seed(c, "c=1, a=0");
  EXPECT_EQ(seed.to_string(), "0-1");
  EXPECT_THROW(TwoValuedState::parse_seed(c, "q=1"), CloudError);
  EXPECT_THROW(TwoValuedState::parse_seed(c, "a=2"), std::exception);
}

TEST(StateKind, Parse) {
  EXPECT_EQ(parse_state_kind("II"), StateKind::II);
  EXPECT_EQ(parse_state_kind("3"), StateKind::III);
  EXPECT_EQ(to_string(StateKind::I), "I");
  EXPECT_THROW(parse_state_kind("IV"), std::exception);
}

TEST(Propagation, TrueExcludesMatesThenLastMemberTrue) {
  const Cloud c = cloud("context a x\ncontext x y b\ncontext y z\n");
  const auto r = propagate(c, TwoValuedState::parse_seed(c, "a=1,b=0"));
  ASSERT_TRUE(r.consistent());
  EXPECT_EQ(r.state.to_string(), "10100");
  ASSERT_EQ(r.derivation.size(), 3U);
  EXPECT_EQ(r.derivation[0].rule, PropagationRule::TrueExcludesMates);
  EXPECT_EQ(r.derivation[0].round, 1U);
  EXPECT_EQ(r.derivation[1].rule, PropagationRule::LastMemberTrue);
  EXPECT_EQ(r.derivation[1].round, 2U);
  EXPECT_EQ(r.derivation[2].round, 3U);
  EXPECT_TRUE(replay_derivation(c, TwoValuedState::parse_seed(c, "a=1,b=0"), r));
}

TEST(Propagation, ReportsContradictions) {
  const Cloud c = cloud("context a b c\n");
  const auto two = propagate(c, TwoValuedState::parse_seed(c, "a=1,b=1"));
  ASSERT_FALSE(two.consistent());
  EXPECT_EQ(two.contradiction->kind, Contradiction::Kind::TwoTrue);
  EXPECT_EQ(two.contradiction->witnesses, (std::vector<VertexIndex>{0, 1}));
  const auto none = propagate(c, TwoValuedState::parse_seed(c, "a=0,b=0,c=0"));
  ASSERT_FALSE(none.consistent());
  EXPECT_EQ(none.contradiction->kind, Contradiction::Kind::AllFalse);
  EXPECT_THROW(propagate(c, TwoValuedState(2)), std::exception);
}

TEST(Propagation, ReplayRejectsForgedSteps) {
  const Cloud c = cloud("context a b c\n");
  const TwoValuedState seed = TwoValuedState::parse_seed(c, "a=1");
  auto r = propagate(c, seed);
  ASSERT_TRUE(replay_derivation(c, seed, r));
  r.derivation[0].value = true;
  EXPECT_FALSE(replay_derivation(c, seed, r));
}

TEST(Enumerate, SmallClouds) {
  EXPECT_EQ(enumerate_states(cloud("context a b c\n")).size(), 3U);
  EXPECT_EQ(enumerate_states(cloud("context a b\ncontext b c\ncontext c a\n")).size(), 0U);
  // An isolated vertex doubles the count.
  EXPECT_EQ(enumerate_states(cloud("vertex z\ncontext a b\n")).size(), 4U);
  const StateSet s = enumerate_states(cloud("context a b\n"));
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s.states[0].to_string(), "01");
  EXPECT_EQ(s.states[1].to_string(), "10");
}

TEST(Enumerate, ParallelMatchesSerialOnDatasets) {
  for (const char* name : {"pentagon", "bug", "tifs38", "hh10", "tiffts"}) {
    const Cloud c = dataset(name).cloud;
    EnumerationOptions par;
    par.jobs = 4;
    EXPECT_EQ(enumerate_states(c, par).states, enumerate_states(c).states) << name;
  }
}

TEST(Enumerate, MatchesBacktrackingOracleOnDatasets) {
  for (const char* name : {"firefly", "pentagon", "bug", "hh10_open", "tiffts"}) {
    const Cloud c = dataset(name).cloud;
    EXPECT_EQ(enumerate_states(c).states, oracle::backtrack_states(c)) << name;
  }
}

TEST(Enumerate, Caps) {
  EnumerationOptions small;
  small.state_cap = 2;
  EXPECT_THROW(enumerate_states(cloud("context a b c\n"), small), ResourceLimitError);
  EnumerationOptions few;
  few.vertex_cap = 2;
  EXPECT_THROW(enumerate_states(cloud("context a b c\n"), few), ResourceLimitError);
  EnumerationOptions first;
  first.stop_after = 1;
  EXPECT_EQ(enumerate_states(cloud("context a b c\n"), first).size(), 1U);
  EXPECT_EQ(count_type_I(cloud("context a b c\n")), BigInt(8));
}

TEST(Properties, Firefly) {
  const Cloud c = dataset("firefly").cloud;
  const auto p = state_properties(c, enumerate_states(c));
  EXPECT_EQ(p.count, 5U);
  EXPECT_TRUE(p.unital);
  EXPECT_TRUE(p.separating);
  EXPECT_TRUE(p.full);
  EXPECT_TRUE(p.forced_zero.empty());
}

TEST(Properties, EmptySetHasNoFlags) {
  const Cloud c = cloud("context a b\ncontext b c\ncontext c a\n");
  const auto p = state_properties(c, enumerate_states(c));
  EXPECT_TRUE(p.empty);
  EXPECT_FALSE(p.unital || p.separating || p.full);
  EXPECT_TRUE(p.forced_zero.empty());
}

TEST(Properties, ForcedZeroVertices) {
  // The only state is b=d=1, so a and c are never true and b, d never differ.
  const Cloud c = cloud("context a b\ncontext b c\ncontext a c d\n");
  const auto p = state_properties(c, enumerate_states(c));
  EXPECT_EQ(p.count, 1U);
  EXPECT_FALSE(p.unital);
  EXPECT_FALSE(p.separating);
  EXPECT_EQ(p.never_true, (std::vector<VertexIndex>{0, 2}));
  EXPECT_EQ(p.forced_zero, (std::vector<VertexIndex>{0, 2}));
  EXPECT_EQ(p.forced_one, (std::vector<VertexIndex>{1, 3}));
  EXPECT_EQ(p.unseparated, (std::vector<VertexPair>{{1, 3}}));
}

TEST(Classify, RelationsOnSmallClouds) {
  const Cloud chain = cloud("context a x\ncontext x b\n");
  EXPECT_EQ(classify_pair(chain, 0, 2, StateKind::II), Relation::Equivalent);
  const Cloud pair = cloud("context a b\n");
  EXPECT_EQ(classify_pair(pair, 0, 1, StateKind::II), Relation::Opposite);
  const Cloud ff = dataset("firefly").cloud;
  EXPECT_EQ(classify_pair(ff, ff.index_of("a"), ff.index_of("b"), StateKind::II), Relation::Independent);
  EXPECT_EQ(classify_pair(ff, ff.index_of("a"), ff.index_of("b"), StateKind::III), Relation::Independent);
  EXPECT_THROW(classify_pair(ff, 0, 0, StateKind::II), PreconditionError);
  EXPECT_THROW(classify_pair(ff, 0, 1, StateKind::I), PreconditionError);
  EXPECT_EQ(to_string(Relation::NoStateWithATrue), "NO_STATE_WITH_A_TRUE");
}

TEST(Classify, ForcedZeroTerminal) {
  const Cloud c = dataset("tifs38").cloud;
  EXPECT_EQ(classify_pair(c, c.index_of("p16"), c.index_of("a"), StateKind::II), Relation::NoStateWithATrue);
}

TEST(Classify, KochenSpecker) {
  EXPECT_TRUE(ks_check(cloud("context a b\ncontext b c\ncontext c a\n")).kochen_specker);
  const KsResult r = ks_check(cloud("context a b c\n"));
  EXPECT_FALSE(r.kochen_specker);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(is_type_ii(cloud("context a b c\n"), *r.witness));
}

TEST(Classify, TitsAndTifsPairsOnHh10) {
  const Cloud c = dataset("hh10").cloud;
  const auto tits = tits_pairs(c, StateKind::II);
  const VertexPair u1_u20{c.index_of("u1"), c.index_of("u20")};
  EXPECT_NE(std::find(tits.begin(), tits.end(), u1_u20), tits.end());
  const auto tifs = tifs_pairs(c, StateKind::II);
  for (const auto& [x, y] : tifs) EXPECT_LT(x, y);
  VertexPair u1_u22{c.index_of("u1"), c.index_of("u22")};
  if (u1_u22.first > u1_u22.second) std::swap(u1_u22.first, u1_u22.second);
  EXPECT_NE(std::find(tifs.begin(), tifs.end(), u1_u22), tifs.end());
}

}  // namespace
