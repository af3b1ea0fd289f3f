#include <gtest/gtest.h>

#include "domelim/ars.hpp"

namespace domelim {
namespace {

TEST(Ars, Diamond) {
  const FiniteArs ars(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  EXPECT_TRUE(ars.is_terminating());
  EXPECT_TRUE(ars_is_weakly_confluent(ars).confluent);
  EXPECT_TRUE(ars_unique_nf(ars));
  EXPECT_EQ(ars_normal_forms(ars, 0), std::vector<std::size_t>{3});
}

TEST(Ars, Fork) {
  const FiniteArs ars(3, {{0, 1}, {0, 2}});
  const auto wc = ars_is_weakly_confluent(ars);
  EXPECT_FALSE(wc.confluent);
  ASSERT_TRUE(wc.counterexample);
  EXPECT_EQ(*wc.counterexample, (ConfluenceFailure{0, 1, 2}));
  EXPECT_FALSE(ars_unique_nf(ars));
  EXPECT_EQ(ars_normal_forms(ars, 0), (std::vector<std::size_t>{1, 2}));
}

TEST(Ars, EdgelessAndChain) {
  const FiniteArs edgeless(3, {});
  EXPECT_TRUE(ars_is_weakly_confluent(edgeless).confluent);
  EXPECT_TRUE(ars_unique_nf(edgeless));
  const FiniteArs chain(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_TRUE(ars_unique_nf(chain));
  EXPECT_EQ(ars_normal_forms(chain, 1), std::vector<std::size_t>{3});
}

TEST(Ars, CycleIsRejected) {
  // Weakly confluent but not terminating: a <-> b, a -> c.
  const FiniteArs ars(3, {{0, 1}, {1, 0}, {0, 2}});
  EXPECT_FALSE(ars.is_terminating());
  EXPECT_TRUE(ars_is_weakly_confluent(ars).confluent);
  EXPECT_THROW(ars_unique_nf(ars), CyclicSystem);
  EXPECT_THROW(FiniteArs(2, {{0, 5}}), StructuralError);
}

TEST(Ars, NewmanExperimentHasNoImplicationFailures) {
  const auto report = newman_experiment(12, 1, 4, 300, 1);
  EXPECT_EQ(report.samples, 300u);
  EXPECT_EQ(report.implication_failures, 0u);
  EXPECT_GT(report.weakly_confluent, 0u);
  EXPECT_LT(report.weakly_confluent, 300u);
}

TEST(Ars, RandomDagIsSeedDeterministic) {
  std::mt19937_64 a(5), b(5);
  const auto x = random_dag(a, 10, 1, 3), y = random_dag(b, 10, 1, 3);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(x.successors(k), y.successors(k));
  EXPECT_THROW(random_dag(a, 3, 2, 1), StructuralError);
}

}  // namespace
}  // namespace domelim
