#include <gtest/gtest.h>

#include <random>

#include "domelim/dominance.hpp"
#include "domelim/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace domelim {
namespace {

using testing::g_belief;
using testing::g_mix;
using testing::g_one;
using testing::g_pd;
using testing::idx;
using testing::restrict;

std::vector<StrategyRef> refs(const DominatedSet& set) {
  std::vector<StrategyRef> out;
  for (const auto& d : set) out.push_back(d.strategy);
  return out;
}

std::vector<DominanceRelation> base_relations() {
  return {DominanceRelation::strict_pure(),
          DominanceRelation::global_strict_pure(),
          DominanceRelation::strict_mixed(),
          DominanceRelation::global_strict_mixed(),
          DominanceRelation::never_best_response(BeliefMode::Pure),
          DominanceRelation::never_best_response(BeliefMode::Correlated),
          DominanceRelation::global_never_best_response(BeliefMode::Pure),
          DominanceRelation::global_never_best_response(BeliefMode::Correlated),
          DominanceRelation::inherent()};
}

TEST(DominatedSet, PrisonersDilemma) {
  const auto g = g_pd();
  const auto set = dominated_set(DominanceRelation::strict_pure(), Restriction(g));
  const std::vector<StrategyRef> expected = {{0, idx(g, 0, "C")}, {1, idx(g, 1, "C")}};
  EXPECT_EQ(refs(set), expected);
  ASSERT_TRUE(std::holds_alternative<PureDominator>(set[0].certificate.evidence));
  EXPECT_EQ(std::get<PureDominator>(set[0].certificate.evidence).dominator, idx(g, 0, "D"));
}

TEST(DominatedSet, GMix) {
  const auto g = g_mix();
  const Restriction full(g);
  EXPECT_TRUE(dominated_set(DominanceRelation::strict_pure(), full).empty());
  const auto mixed = dominated_set(DominanceRelation::strict_mixed(), full);
  ASSERT_EQ(mixed.size(), 1u);
  EXPECT_EQ(mixed[0].strategy, (StrategyRef{0, idx(g, 0, "M")}));
  const auto& cert = std::get<MixedDominator>(mixed[0].certificate.evidence);
  EXPECT_EQ(cert.eps, make_rational(1, 2));
  EXPECT_EQ(cert.dominator.weight(idx(g, 0, "U")), make_rational(1, 2));
}

TEST(DominatedSet, GBelief) {
  const auto g = g_belief();
  const Restriction full(g);
  const StrategyRef M{0, idx(g, 0, "M")};
  EXPECT_EQ(refs(dominated_set(DominanceRelation::never_best_response(BeliefMode::Pure), full)),
            std::vector<StrategyRef>{M});
  EXPECT_TRUE(dominated_set(DominanceRelation::never_best_response(BeliefMode::Correlated), full).empty());
  EXPECT_TRUE(dominated_set(DominanceRelation::global_never_best_response(BeliefMode::Correlated), full).empty());
  EXPECT_TRUE(dominated_set(DominanceRelation::strict_mixed(), full).empty());
}

TEST(DominatedSet, SingleStrategyGameHasNothingDominated) {
  const Restriction full(g_one());
  for (const auto& rel : base_relations()) EXPECT_TRUE(dominated_set(rel, full).empty()) << rel.name();
}

TEST(DominatedSet, GlobalRelationCanEmptyAPlayer) {
  const auto g = g_pd();
  const auto cc = restrict(g, {{"C"}, {"C"}});
  const auto rel = DominanceRelation::global_strict_pure();
  EXPECT_EQ(collect_dominated(rel, cc).size(), 2u);
  EXPECT_THROW(dominated_set(rel, cc), AssumptionViolated);
  EXPECT_TRUE(dominated_set(DominanceRelation::strict_pure(), cc).empty());
}

TEST(WeakDominance, Basics) {
  const auto g = testing::make_game({{"A", "B"}, {"L", "R"}}, {1, 0, 1, 0, 1, 0, 2, 0});
  const Restriction full(g);
  const auto all = opponent_joints(full, 0);
  EXPECT_TRUE(weakly_dominates_pure(full, 0, 1, 0, all));
  EXPECT_FALSE(weakly_dominates_pure(full, 0, 0, 1, all));
  const std::vector<Joint> left = {Joint{0}};
  EXPECT_FALSE(weakly_dominates_pure(full, 0, 1, 0, left));
  EXPECT_THROW(weakly_dominates_pure(full, 0, 1, 0, std::vector<Joint>{}), StructuralError);
  EXPECT_FALSE(strictly_dominates_pure(full, 0, 1, 0));
}

TEST(Inherent, Fixtures) {
  const auto pd = g_pd();
  const auto evidence = is_inherently_dominated(Restriction(pd), 0, idx(pd, 0, "C"));
  ASSERT_TRUE(evidence);
  EXPECT_EQ(evidence->dominators.size(), 3u);

  const auto belief = g_belief();
  EXPECT_FALSE(is_inherently_dominated(Restriction(belief), 0, idx(belief, 0, "M")));
  EXPECT_TRUE(is_inherently_dominated(restrict(belief, {{"U", "M", "D"}, {"L"}}), 0, idx(belief, 0, "M")));
  EXPECT_FALSE(is_inherently_dominated(Restriction(g_one()), 0, 0));
}

TEST(Inherent, WeakButNotInherent) {
  // B weakly dominates A, but on {L} they tie, so A is not inherently dominated.
  const auto g = testing::make_game({{"A", "B"}, {"L", "R"}}, {1, 0, 1, 0, 1, 0, 2, 0});
  EXPECT_FALSE(is_inherently_dominated(Restriction(g), 0, 0));
}

TEST(Inherent, CapIsEnforced) {
  std::mt19937_64 rng(2);
  const auto g = std::make_shared<const Game>(random_game(rng, {2, 5}));
  EXPECT_THROW(is_inherently_dominated(Restriction(g), 0, 0, 4), UnsupportedConfiguration);
  EXPECT_THROW(certify(DominanceRelation::inherent(4), Restriction(g), {0, 0}), UnsupportedConfiguration);
}

TEST(Relations, NamesRoundTrip) {
  for (const auto& rel : base_relations()) {
    EXPECT_EQ(relation_from_name(rel.name(), rel.mode()), rel) << rel.name();
  }
  EXPECT_THROW(relation_from_name("bogus"), Error);
  const auto both = relation_from_name("strict-pure,inherent");
  EXPECT_EQ(both.kind(), DominanceRelation::Kind::Intersection);
  EXPECT_EQ(both.parts().size(), 2u);
}

TEST(Relations, Intersection) {
  const auto g = g_pd();
  const auto rel = DominanceRelation::intersection({DominanceRelation::strict_pure(), DominanceRelation::inherent()});
  EXPECT_EQ(dominated_set(rel, Restriction(g)).size(), 2u);
  const auto gm = g_mix();
  const auto none = DominanceRelation::intersection({DominanceRelation::strict_pure(), DominanceRelation::strict_mixed()});
  EXPECT_TRUE(dominated_set(none, Restriction(gm)).empty());
}

TEST(Certificates, ReverifyAndRejectTampering) {
  const auto g = g_pd();
  const Restriction full(g);
  const StrategyRef C{0, idx(g, 0, "C")};
  const StrategyRef D{0, idx(g, 0, "D")};
  for (const auto& rel : base_relations()) {
    const auto cert = certify(rel, full, C);
    ASSERT_TRUE(cert) << rel.name();
    EXPECT_TRUE(verify_certificate(rel, full, C, *cert)) << rel.name();
    EXPECT_FALSE(verify_certificate(rel, full, D, *cert)) << rel.name();
  }
  EXPECT_FALSE(verify_certificate(DominanceRelation::strict_pure(), full, C, DominanceCertificate{PureDominator{C.index}}));
  const MixedStrategy half(0, {make_rational(1, 2), make_rational(1, 2)});
  EXPECT_FALSE(verify_certificate(DominanceRelation::strict_mixed(), full, C,
                                  DominanceCertificate{MixedDominator{half, Rational(1)}}));
  EXPECT_FALSE(verify_certificate(DominanceRelation::strict_mixed(), full, C,
                                  DominanceCertificate{MixedDominator{MixedStrategy::pure(0, 2, 1), Rational(2)}}));
  EXPECT_TRUE(verify_certificate(DominanceRelation::strict_mixed(), full, C,
                                 DominanceCertificate{MixedDominator{MixedStrategy::pure(0, 2, 1), Rational(1)}}));
}

TEST(Certificates, LocalRelationsRejectRemovedDominators) {
  const auto g = g_mix();
  const auto ud = restrict(g, {{"M", "D"}, {"L", "R"}});
  const StrategyRef M{0, idx(g, 0, "M")};
  const auto global = certify(DominanceRelation::global_strict_mixed(), ud, M);
  ASSERT_TRUE(global);
  EXPECT_TRUE(verify_certificate(DominanceRelation::global_strict_mixed(), ud, M, *global));
  EXPECT_FALSE(verify_certificate(DominanceRelation::strict_mixed(), ud, M, *global));
  EXPECT_FALSE(certify(DominanceRelation::strict_mixed(), ud, M));
}

// Strict pure dominance against the independent matrix oracle.
TEST(StrictPure, AgreesWithOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = std::make_shared<const Game>(random_game(rng, {2 + uniform_below(rng, 3), 2 + uniform_below(rng, 3)}));
    const auto r = random_restriction(rng, g);
    const auto opponents = opponent_joints(r, 0);
    oracle::Matrix rows(g->num_strategies(0), std::vector<long>(opponents.size()));
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t c = 0; c < opponents.size(); ++c) {
        rows[a][c] = payoff_pure(*g, 0, with_strategy(opponents[c], 0, a)).get_num().get_si();
      }
    }
    std::vector<std::size_t> all(g->num_strategies(0));
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
    for (std::size_t s : r.kept(0)) {
      EXPECT_EQ(is_dominated(DominanceRelation::strict_pure(), r, {0, s}),
                oracle::strictly_dominated_by_pure(rows, s, r.kept(0)));
      EXPECT_EQ(is_dominated(DominanceRelation::global_strict_pure(), r, {0, s}),
                oracle::strictly_dominated_by_pure(rows, s, all));
    }
  }
}

TEST(Certificates, AllCertificatesReverifyOnRandomRestrictions) {
  std::mt19937_64 rng(33);
  auto relations = base_relations();
  relations.push_back(DominanceRelation::never_best_response(BeliefMode::MixedIndependent));
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = std::make_shared<const Game>(random_game(rng, {2 + uniform_below(rng, 3), 2 + uniform_below(rng, 3)}));
    const auto r = random_restriction(rng, g);
    for (const auto& rel : relations) {
      for (const auto& d : collect_dominated(rel, r)) {
        EXPECT_TRUE(verify_certificate(rel, r, d.strategy, d.certificate)) << rel.name();
      }
    }
  }
}

}  // namespace
}  // namespace domelim
