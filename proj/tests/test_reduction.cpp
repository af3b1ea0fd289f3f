#include <gtest/gtest.h>

#include <random>

#include "domelim/random.hpp"
#include "domelim/reduction.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace domelim {
namespace {

using testing::g_belief;
using testing::g_mix;
using testing::g_one;
using testing::g_pd;
using testing::restrict;

TEST(Successors, PoliciesOnPrisonersDilemma) {
  const auto g = g_pd();
  const Restriction full(g);
  const auto rel = DominanceRelation::strict_pure();
  const auto fast = successors(rel, full, FullSpeed{});
  ASSERT_EQ(fast.size(), 1u);
  EXPECT_EQ(fast[0].after, restrict(g, {{"D"}, {"D"}}));
  const auto lex = successors(rel, full, SingleLex{});
  ASSERT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex[0].after, restrict(g, {{"D"}, {"C", "D"}}));
  EXPECT_EQ(successors(rel, full, AllSubsets{}).size(), 3u);
  EXPECT_TRUE(successors(rel, restrict(g, {{"D"}, {"D"}}), AllSubsets{}).empty());
}

TEST(NormalForm, Fixtures) {
  const auto pd = g_pd();
  const auto fast = normal_form(DominanceRelation::strict_pure(), pd, FullSpeed{});
  EXPECT_EQ(fast.steps.size(), 1u);
  EXPECT_EQ(fast.outcome, restrict(pd, {{"D"}, {"D"}}));
  const auto lex = normal_form(DominanceRelation::strict_pure(), pd, SingleLex{});
  EXPECT_EQ(lex.steps.size(), 2u);
  EXPECT_EQ(lex.outcome, fast.outcome);

  const auto mix = g_mix();
  EXPECT_EQ(normal_form(DominanceRelation::strict_mixed(), mix, FullSpeed{}).outcome,
            restrict(mix, {{"U", "D"}, {"L", "R"}}));
  EXPECT_TRUE(normal_form(DominanceRelation::strict_pure(), mix, FullSpeed{}).outcome.is_full());

  const auto belief = g_belief();
  EXPECT_EQ(normal_form(DominanceRelation::never_best_response(BeliefMode::Pure), belief, FullSpeed{}).outcome,
            restrict(belief, {{"U", "D"}, {"L", "R"}}));
  EXPECT_TRUE(
      normal_form(DominanceRelation::never_best_response(BeliefMode::Correlated), belief, FullSpeed{}).outcome.is_full());
  const auto rationalizable =
      normal_form(DominanceRelation::global_never_best_response(BeliefMode::Correlated), belief, FullSpeed{});
  EXPECT_TRUE(rationalizable.outcome.is_full());
  EXPECT_TRUE(rationalizable.steps.empty());

  EXPECT_TRUE(normal_form(DominanceRelation::inherent(), g_one(), FullSpeed{}).outcome.is_full());
  EXPECT_THROW(normal_form(DominanceRelation::strict_pure(), pd, AllSubsets{}), StructuralError);
}

TEST(NormalForm, SingleRandomIsSeedDeterministic) {
  std::mt19937_64 rng(4);
  const auto g = std::make_shared<const Game>(random_game(rng, {4, 4}));
  const auto rel = DominanceRelation::strict_mixed();
  const auto a = normal_form(rel, g, SingleRandom{99});
  const auto b = normal_form(rel, g, SingleRandom{99});
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k) EXPECT_EQ(a.steps[k].after, b.steps[k].after);
  EXPECT_EQ(a.outcome, normal_form(rel, g, FullSpeed{}).outcome);
}

TEST(AllOutcomes, PrisonersDilemma) {
  const auto g = g_pd();
  const auto result = all_outcomes(DominanceRelation::strict_pure(), g);
  ASSERT_EQ(result.outcomes.size(), 1u);
  EXPECT_EQ(result.outcomes[0], restrict(g, {{"D"}, {"D"}}));
  EXPECT_EQ(result.visited.size(), 4u);
  EXPECT_FALSE(result.budget_exceeded);
}

TEST(AllOutcomes, BudgetIsReported) {
  const auto result = all_outcomes(DominanceRelation::strict_pure(), g_pd(), 2);
  EXPECT_TRUE(result.budget_exceeded);
}

TEST(AllOutcomes, MatchesOracleIteration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows_n = 2 + uniform_below(rng, 3), cols_n = 2 + uniform_below(rng, 3);
    const auto g = std::make_shared<const Game>(random_game(rng, {rows_n, cols_n}));
    oracle::Matrix rows(rows_n, std::vector<long>(cols_n)), cols(rows_n, std::vector<long>(cols_n));
    for (std::size_t a = 0; a < rows_n; ++a) {
      for (std::size_t b = 0; b < cols_n; ++b) {
        rows[a][b] = payoff_pure(*g, 0, Joint{a, b}).get_num().get_si();
        cols[a][b] = payoff_pure(*g, 1, Joint{a, b}).get_num().get_si();
      }
    }
    const auto expected = oracle::iterate_strict_pure(rows, cols);
    const auto result = all_outcomes(DominanceRelation::strict_pure(), g);
    ASSERT_EQ(result.outcomes.size(), 1u);
    EXPECT_EQ(result.outcomes[0].kept(0), expected[0]);
    EXPECT_EQ(result.outcomes[0].kept(1), expected[1]);
  }
}

TEST(IsReductionStep, Basics) {
  const auto g = g_pd();
  const Restriction full(g);
  const auto rel = DominanceRelation::strict_pure();
  EXPECT_TRUE(is_reduction_step(rel, full, restrict(g, {{"D"}, {"D"}})));
  EXPECT_FALSE(is_reduction_step(rel, full, full));
  EXPECT_FALSE(is_reduction_step(rel, full, restrict(g, {{"C"}, {"C", "D"}})));
}

TEST(Checks, MonotonicityWitnessForStrictPure) {
  const auto g = g_pd();
  const auto witness =
      check_monotonic_pair(DominanceRelation::strict_pure(), Restriction(g), restrict(g, {{"C"}, {"C"}}));
  ASSERT_TRUE(witness);
  EXPECT_EQ(*witness, (StrategyRef{0, 0}));
  EXPECT_FALSE(check_monotonic_pair(DominanceRelation::global_strict_pure(), Restriction(g), restrict(g, {{"C"}, {"C"}})));
  EXPECT_THROW(check_monotonic_pair(DominanceRelation::strict_pure(), restrict(g, {{"C"}, {"C"}}), Restriction(g)),
               StructuralError);
}

TEST(Checks, HereditaryAndProofShapeOnFixtures) {
  const auto g = g_pd();
  const auto rel = DominanceRelation::strict_pure();
  for (const auto& step : successors(rel, Restriction(g), AllSubsets{})) {
    EXPECT_FALSE(check_hereditary_step(rel, step));
    EXPECT_FALSE(check_proof_shape(rel, step));
  }
}

TEST(Checks, RandomWalksAreHereditaryAndProofShaped) {
  std::mt19937_64 rng(12);
  const std::vector<DominanceRelation> relations = {
      DominanceRelation::strict_pure(), DominanceRelation::strict_mixed(),
      DominanceRelation::never_best_response(BeliefMode::Pure), DominanceRelation::global_strict_mixed(),
      DominanceRelation::inherent()};
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = std::make_shared<const Game>(random_game(rng, {2 + uniform_below(rng, 3), 2 + uniform_below(rng, 3)}));
    for (const auto& rel : relations) {
      for (const auto& step : random_walk(rng, rel, g)) {
        EXPECT_TRUE(is_reduction_step(rel, step.before, step.after));
        EXPECT_FALSE(check_hereditary_step(rel, step)) << rel.name();
        EXPECT_FALSE(check_proof_shape(rel, step)) << rel.name();
      }
    }
  }
}

TEST(DominanceCache, Memoizes) {
  DominanceCache cache(DominanceRelation::strict_pure());
  const Restriction full(g_pd());
  EXPECT_EQ(cache.get(full).size(), 2u);
  EXPECT_EQ(cache.get(full).size(), 2u);
  EXPECT_EQ(cache.size(), 1u);
}

}  // namespace
}  // namespace domelim
