// Invariants checked over seeded random games and random restrictions.

#include <gtest/gtest.h>

#include <random>

#include "domelim/domelim.hpp"
#include "fixtures.hpp"

namespace domelim {
namespace {

std::vector<GamePtr> suite() {
  static const auto games = random_suite(424242, 60, 10);
  return games;
}

std::vector<GamePtr> fixtures() {
  return {testing::g_pd(), testing::g_mix(), testing::g_belief(), testing::g_one()};
}

std::vector<Restriction> sample_restrictions(std::uint64_t seed, std::size_t per_game) {
  std::mt19937_64 rng(seed);
  std::vector<Restriction> out;
  for (const auto& g : fixtures()) out.emplace_back(g);
  for (const auto& g : suite()) {
    out.emplace_back(g);
    for (std::size_t k = 0; k < per_game; ++k) out.push_back(random_restriction(rng, g));
  }
  return out;
}

std::vector<StrategyRef> members(const DominanceRelation& rel, const Restriction& r) {
  std::vector<StrategyRef> out;
  for (const auto& d : collect_dominated(rel, r)) out.push_back(d.strategy);
  return out;
}

bool subset(const std::vector<StrategyRef>& a, const std::vector<StrategyRef>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TEST(Properties, StrictMixedEqualsCorrelatedNeverBest) {
  for (const auto& r : sample_restrictions(1, 3)) {
    EXPECT_EQ(members(DominanceRelation::strict_mixed(), r),
              members(DominanceRelation::never_best_response(BeliefMode::Correlated), r));
  }
}

TEST(Properties, InclusionChain) {
  using R = DominanceRelation;
  for (const auto& r : sample_restrictions(2, 3)) {
    const auto sp = members(R::strict_pure(), r);
    EXPECT_TRUE(subset(sp, members(R::strict_mixed(), r)));
    EXPECT_TRUE(subset(sp, members(R::global_strict_pure(), r)));
    EXPECT_TRUE(subset(sp, members(R::inherent(), r)));
    EXPECT_TRUE(subset(members(R::strict_mixed(), r), members(R::global_strict_mixed(), r)));
    for (const auto mode : {BeliefMode::Pure, BeliefMode::Correlated}) {
      EXPECT_TRUE(subset(members(R::never_best_response(mode), r), members(R::global_never_best_response(mode), r)));
    }
  }
}

TEST(Properties, LocalEqualsGlobalOnFullGames) {
  using R = DominanceRelation;
  auto games = suite();
  for (const auto& g : fixtures()) games.push_back(g);
  for (const auto& g : games) {
    const Restriction full(g);
    EXPECT_EQ(members(R::strict_pure(), full), members(R::global_strict_pure(), full));
    EXPECT_EQ(members(R::strict_mixed(), full), members(R::global_strict_mixed(), full));
    for (const auto mode : {BeliefMode::Pure, BeliefMode::Correlated}) {
      EXPECT_EQ(members(R::never_best_response(mode), full), members(R::global_never_best_response(mode), full));
    }
  }
}

TEST(Properties, TwoPlayerMixedBeliefsEqualCorrelated) {
  for (const auto& r : sample_restrictions(3, 3)) {
    if (r.num_players() != 2) continue;
    EXPECT_EQ(members(DominanceRelation::never_best_response(BeliefMode::MixedIndependent), r),
              members(DominanceRelation::never_best_response(BeliefMode::Correlated), r));
  }
}

TEST(Properties, IntersectionIsIntersectionOfParts) {
  using R = DominanceRelation;
  const std::vector<R> parts = {R::strict_mixed(), R::inherent(), R::global_never_best_response(BeliefMode::Pure)};
  for (const auto& r : sample_restrictions(4, 2)) {
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (std::size_t b = a + 1; b < parts.size(); ++b) {
        const auto left = members(parts[a], r), right = members(parts[b], r);
        std::vector<StrategyRef> both;
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(both));
        EXPECT_EQ(members(R::intersection({parts[a], parts[b]}), r), both);
      }
    }
  }
}

TEST(Properties, CertificatesReverify) {
  using R = DominanceRelation;
  const std::vector<R> relations = {R::strict_pure(), R::global_strict_pure(), R::strict_mixed(),
                                    R::global_strict_mixed(), R::inherent()};
  for (const auto& r : sample_restrictions(5, 2)) {
    for (const auto& rel : relations) {
      for (const auto& d : collect_dominated(rel, r)) EXPECT_TRUE(verify_certificate(rel, r, d.strategy, d.certificate));
    }
  }
}

TEST(Properties, MixedCertificatesAttainTheirMargin) {
  for (const auto& r : sample_restrictions(6, 2)) {
    for (const auto& d : collect_dominated(DominanceRelation::strict_mixed(), r)) {
      const auto& cert = std::get<MixedDominator>(d.certificate.evidence);
      EXPECT_EQ(min_advantage(r, cert.dominator, d.strategy.index), cert.eps);
      EXPECT_EQ(cert.dominator.weight(d.strategy.index), 0);
    }
  }
}

TEST(Properties, OrderIndependenceOnSuite) {
  using R = DominanceRelation;
  const std::vector<R> relations = {R::strict_pure(),
                                    R::global_strict_pure(),
                                    R::strict_mixed(),
                                    R::global_strict_mixed(),
                                    R::never_best_response(BeliefMode::Pure),
                                    R::never_best_response(BeliefMode::Correlated),
                                    R::global_never_best_response(BeliefMode::Correlated),
                                    R::inherent()};
  for (const auto& g : suite()) {
    for (const auto& rel : relations) {
      const auto result = all_outcomes(rel, g);
      ASSERT_EQ(result.outcomes.size(), 1u) << rel.name();
      EXPECT_EQ(result.outcomes[0], normal_form(rel, g, FullSpeed{}).outcome);
      EXPECT_EQ(result.outcomes[0], normal_form(rel, g, SingleLex{}).outcome);
    }
  }
}

TEST(Properties, GlobalRelationsAreMonotonic) {
  using R = DominanceRelation;
  const std::vector<R> relations = {R::global_strict_pure(), R::global_strict_mixed(),
                                    R::global_never_best_response(BeliefMode::Pure),
                                    R::global_never_best_response(BeliefMode::Correlated)};
  std::mt19937_64 rng(7);
  for (const auto& g : suite()) {
    for (int k = 0; k < 4; ++k) {
      const auto r = random_restriction(rng, g);
      const auto sub = random_subrestriction(rng, r);
      for (const auto& rel : relations) EXPECT_FALSE(check_monotonic_pair(rel, r, sub)) << rel.name();
    }
  }
}

TEST(Properties, SimplexSolutionsSatisfyConstraints) {
  std::mt19937_64 rng(13);
  std::size_t optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t vars = 1 + uniform_below(rng, 4), rows = 1 + uniform_below(rng, 4);
    LinearProgram lp;
    for (std::size_t v = 0; v < vars; ++v) {
      lp.objective.emplace_back(static_cast<long>(uniform_below(rng, 7)) - 3);
      lp.nonnegative.push_back(uniform_below(rng, 4) != 0);
    }
    for (std::size_t k = 0; k < rows; ++k) {
      Constraint c;
      for (std::size_t v = 0; v < vars; ++v) c.coefficients.emplace_back(static_cast<long>(uniform_below(rng, 7)) - 3);
      c.comparator = static_cast<Comparator>(uniform_below(rng, 3));
      c.rhs = static_cast<long>(uniform_below(rng, 9)) - 4;
      lp.constraints.push_back(std::move(c));
    }
    const auto out = solve(lp);
    if (const auto* opt = std::get_if<Optimal>(&out)) {
      ++optimal;
      EXPECT_TRUE(satisfies(lp, opt->solution));
      Rational value = 0;
      for (std::size_t v = 0; v < vars; ++v) value += lp.objective[v] * opt->solution[v];
      EXPECT_EQ(value, opt->value);
    }
  }
  EXPECT_GT(optimal, 30u);
}

TEST(Properties, PayoffTensorRoundTripsThroughTheFileFormat) {
  for (const auto& g : suite()) EXPECT_EQ(parse_game(write_game(*g)), *g);
}

}  // namespace
}  // namespace domelim
