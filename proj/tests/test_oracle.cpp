#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pathsdd/error.hpp"
#include "pathsdd/generators.hpp"
#include "pathsdd/oracle.hpp"

using namespace pathsdd;
using namespace pathsdd::oracle;

TEST(BrutePaths, Examples) {
  auto one = brute_paths(fixtures::single_edge());
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.states[0].to_string(), "1");
  auto dia = brute_paths(fixtures::diamond());
  ASSERT_EQ(dia.size(), 2u);
  EXPECT_EQ(dia.states[0].to_string(), "0101");
  EXPECT_EQ(dia.states[1].to_string(), "1010");
  EXPECT_EQ(brute_paths(gen_grid(2, 2)).size(), 6u);
}

TEST(BrutePaths, AgreesWithStateCheck) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Dag d = random_dag(seed);
    auto paths = brute_paths(d);
    const std::size_t k = d.edge_count();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
      const auto y = fixtures::state_of(k, m);
      ASSERT_EQ(paths.contains(y), is_path_state(d, y)) << y.to_string();
    }
  }
}

TEST(BrutePaths, Guards) {
  EXPECT_THROW(brute_paths(parse_edge_list("s S\nt S\ne S A\n")), Error);
  EXPECT_THROW(brute_paths(gen_grid(4, 4)), Error);  // 40 edges
}

TEST(BruteDistribution, SingleEdge) {
  auto dist = brute_distribution(fixtures::single_edge(), Logits::zeros(1));
  ASSERT_EQ(dist.rows.size(), 2u);
  EXPECT_EQ(dist.rows[0].state.to_string(), "0");
  EXPECT_EQ(dist.rows[0].prob, 0.5);
  EXPECT_FALSE(dist.rows[0].satisfies);
  EXPECT_EQ(dist.rows[0].cond_prob, 0.0);
  EXPECT_EQ(dist.rows[1].prob, 0.5);
  EXPECT_TRUE(dist.rows[1].satisfies);
  EXPECT_EQ(dist.rows[1].cond_prob, 1.0);
}

TEST(BruteDistribution, DiamondAndNormalisation) {
  EXPECT_DOUBLE_EQ(brute_distribution(fixtures::diamond(), Logits::zeros(4)).constraint_prob,
                   0.125);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Dag d = random_dag(seed);
    auto dist = brute_distribution(d, fixtures::random_logits(d.edge_count(), seed));
    EXPECT_NEAR(dist.total_prob, 1.0, 1e-12);
  }
}

TEST(DagBestPath, Examples) {
  auto best = dag_best_path(fixtures::diamond(), Logits({1, 0, 1, 0}));
  EXPECT_EQ(best.state.to_string(), "1010");
  EXPECT_DOUBLE_EQ(best.log_weight, 2.0);
  auto tie = dag_best_path(fixtures::diamond(), Logits::zeros(4));
  EXPECT_EQ(tie.state.to_string(), "0101");
  EXPECT_EQ(tie.log_weight, 0.0);
  auto one = dag_best_path(fixtures::single_edge(), Logits({-2.5}));
  EXPECT_EQ(one.state.to_string(), "1");
  EXPECT_EQ(one.log_weight, -2.5);
}

TEST(DagBestPath, AgreesWithRankedList) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Dag d = random_dag(seed);
    auto a = fixtures::random_logits(d.edge_count(), seed + 3);
    auto ranked = ranked_paths(d, a);
    ASSERT_FALSE(ranked.empty());
    auto best = dag_best_path(d, a);
    EXPECT_EQ(best.state, ranked.front().state);
    EXPECT_NEAR(best.log_weight, ranked.front().log_weight, 1e-12);
  }
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(22, 11), 705432);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(40, 20).str(), "137846528820");
}
