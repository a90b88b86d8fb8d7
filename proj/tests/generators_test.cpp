#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

#include "homophily/generators.hpp"
#include "homophily/measures.hpp"

namespace homophily {
namespace {

TEST(GeneratorsTest, ErdosRenyiAtOneIsComplete) {
  const LabeledGraph g = erdos_renyi(6, 1.0, {3, 3}, false, 1);
  EXPECT_EQ(g.edge_count(), 15u);
  EXPECT_EQ(g.class_count(), 2u);
  EXPECT_EQ(g.label(2), 0u);
  EXPECT_EQ(g.label(3), 1u);
  const LabeledGraph loops = erdos_renyi(6, 1.0, {3, 3}, true, 1);
  EXPECT_EQ(loops.edge_count(), 21u);
}

TEST(GeneratorsTest, RejectsBadConfigs) {
  EXPECT_THROW(erdos_renyi(5, 0.5, {3, 3}, false, 1), std::invalid_argument);
  EXPECT_THROW(erdos_renyi(6, 1.5, {3, 3}, false, 1), std::invalid_argument);
  EXPECT_THROW(sbm({3, 3}, -0.1, 0.2, 1), std::invalid_argument);
  EXPECT_THROW(complete_partition({1}), std::invalid_argument);
  EXPECT_THROW(erdos_renyi(4, 0.0, {2, 2}, false, 1, OnDegenerate::error), DegenerateGraph);
  EXPECT_THROW(generate({.kind = "nope"}), std::invalid_argument);
}

TEST(GeneratorsTest, Deterministic) {
  const LabeledGraph a = sbm({20, 30}, 0.3, 0.1, 42);
  const LabeledGraph b = sbm({20, 30}, 0.3, 0.1, 42);
  const LabeledGraph c = sbm({20, 30}, 0.3, 0.1, 43);
  EXPECT_TRUE(std::ranges::equal(a.edges(), b.edges()));
  EXPECT_FALSE(std::ranges::equal(a.edges(), c.edges()));
  const LabeledGraph r1 = agreement_random_graph(5);
  const LabeledGraph r2 = agreement_random_graph(5);
  EXPECT_TRUE(std::ranges::equal(r1.edges(), r2.edges()));
  EXPECT_TRUE(std::ranges::equal(r1.labels(), r2.labels()));
}

TEST(GeneratorsTest, DisjointCliques) {
  const LabeledGraph g = sbm({4, 5, 3}, 1.0, 0.0, 1);
  EXPECT_EQ(g.edge_count(), 6u + 10u + 3u);
  EXPECT_NEAR(unbiased_homophily(class_matrix(g)), 1.0, 1e-12);
}

TEST(GeneratorsTest, CompletePartitionRows) {
  const NormalizedClassMatrix g1 = class_matrix(complete_partition({1, 1, 1, 1, 1, 1}));
  EXPECT_NEAR(unbiased_homophily(g1), -1.0, 1e-12);
  const NormalizedClassMatrix g2 = class_matrix(complete_partition({2, 2, 2}));
  EXPECT_NEAR(edge_homophily(g2), 0.2, 1e-12);
  EXPECT_NEAR(adjusted_homophily(g2), -0.2, 1e-12);
  EXPECT_NEAR(unbiased_homophily(g2), -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(adjusted_homophily(class_matrix(complete_partition({1, 1, 1}))), -0.5, 1e-12);
  EXPECT_NEAR(adjusted_homophily(class_matrix(complete_partition({1, 1, 1, 1}))), -1.0 / 3.0,
              1e-12);
}

TEST(GeneratorsTest, ErdosRenyiEdgeCountsWithinFourSigma) {
  const std::size_t n = 60;
  const double p = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs * p;
  const double sigma = std::sqrt(pairs * p * (1 - p));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const LabeledGraph g = erdos_renyi(n, p, {30, 30}, false, seed);
    EXPECT_LT(std::abs(static_cast<double>(g.edge_count()) - mean), 4 * sigma);
  }
}

TEST(GeneratorsTest, SelfLoopErMatchesExpectedEdgeHomophily) {
  // Mean over seeds of h_edge for the 98:2 split approaches 0.98^2 + 0.02^2.
  double total = 0.0;
  const int reps = 200;
  for (int s = 0; s < reps; ++s) {
    std::vector<std::size_t> sizes = {98, 2};
    total += edge_homophily(erdos_renyi(100, 0.5, sizes, true, s));
  }
  EXPECT_NEAR(total / reps, 0.9608, 0.003);
}

TEST(GeneratorsTest, AgreementGraphStructure) {
  std::vector<int> counts(11, 0);
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    const LabeledGraph g = agreement_random_graph(static_cast<std::uint64_t>(s));
    ++counts[g.class_count()];
    if (s >= 500) continue;  // structural checks on a prefix of the draws
    ASSERT_EQ(g.node_count(), 100u);
    for (std::size_t k : aggregates(g).class_sizes) EXPECT_GT(k, 0u);
    for (NodeId v = 1; v < 100; ++v) EXPECT_LE(g.label(v - 1), g.label(v));
    EXPECT_NO_THROW(class_matrix(g));
  }
  double chi2 = 0.0;
  const double expected = draws / 9.0;
  for (int m = 2; m <= 10; ++m) chi2 += std::pow(counts[m] - expected, 2) / expected;
  const boost::math::chi_squared dist(8);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01);
}

}  // namespace
}  // namespace homophily
