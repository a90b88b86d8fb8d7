#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "homophily/experiments.hpp"
#include "homophily/generators.hpp"

namespace homophily {
namespace {

using testing::complete_graph;

TEST(CompareValuesTest, TieModes) {
  EXPECT_EQ(compare_values(0.5, 0.5 + 1e-13, TieMode::trichotomy), 0);
  EXPECT_EQ(compare_values(0.5, 0.5 + 1e-13, TieMode::strict_sign), -1);
  EXPECT_EQ(compare_values(0.6, 0.5, TieMode::trichotomy), 1);
  EXPECT_EQ(compare_values(0.5, 0.5, TieMode::strict_sign), 0);
  EXPECT_EQ(parse_tie_mode("strict"), TieMode::strict_sign);
  EXPECT_THROW(parse_tie_mode("loose"), std::invalid_argument);
}

// Path 0-1-2 labelled A A B and the same path labelled A B A: edge
// homophily 0.5 vs 0; with a pendant homophilic edge added the first graph
// also wins on node homophily.
LabeledGraph graph_a() { return LabeledGraph({0, 0, 1, 1}, 2, {{0, 1}, {1, 2}, {2, 3}}); }
LabeledGraph graph_b() { return LabeledGraph({0, 1, 0, 1}, 2, {{0, 1}, {1, 2}, {2, 3}}); }

TEST(AgreementTest, FixedPairGivesZeroOrHundred) {
  const PairSource fixed = [](Rng&) { return GraphPair{graph_a(), graph_b(), false}; };
  const std::vector<Measure> ms = {make_measure("edge"), make_measure("node"),
                                   make_measure("adjusted"), make_measure("unbiased")};
  const AgreementMatrix r = agreement_experiment(fixed, ms, 5, 1);
  // Oracle: outcomes computed directly.
  std::vector<int> outcome;
  for (const Measure& h : ms) {
    outcome.push_back(compare_values(h.evaluate(graph_a()).value(), h.evaluate(graph_b()).value(),
                                     TieMode::trichotomy));
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      ASSERT_TRUE(r.percent(i, j));
      EXPECT_EQ(*r.percent(i, j), outcome[i] == outcome[j] ? 100.0 : 0.0);
      EXPECT_EQ(r.excluded(i, j), 0u);
    }
  }
}

TEST(AgreementTest, CorpusPairsWithReplacement) {
  // Graph A is more homophilic by both measures; "reversed" flips the sign
  // of edge homophily, so the two disagree on every pair of distinct graphs
  // and agree (both tie) on identical ones.
  MeasureDescriptor d;
  d.name = "reversed";
  const Measure reversed(d, [](const NormalizedClassMatrix& c) {
    return MeasureValue::of(-edge_homophily(c));
  });
  const std::vector<Measure> ms = {make_measure("edge"), reversed};
  const AgreementMatrix r =
      agreement_experiment(corpus_pair_source({graph_a(), graph_b()}), ms, 400, 3);
  EXPECT_GT(r.identical_pairs, 100u);
  EXPECT_LT(r.identical_pairs, 300u);
  EXPECT_EQ(r.agree[0][1], r.identical_pairs);
  EXPECT_EQ(*r.percent(0, 0), 100.0);
  EXPECT_THROW(corpus_pair_source({graph_a()}), std::invalid_argument);
}

TEST(AgreementTest, UndefinedValuesAreExcluded) {
  const LabeledGraph dummy = complete_graph({0, 0, 1, 1}, 3);  // class 2 is empty
  const std::vector<LabeledGraph> corpus = {graph_a(), graph_b(), dummy};
  const std::vector<Measure> ms = agreement_catalog();
  const std::size_t pairs = 300;
  const AgreementMatrix r = agreement_experiment(corpus_pair_source(corpus), ms, pairs, 11);

  // Oracle: replay the draws and count pairs touching the dummy-class graph.
  std::size_t touching = 0;
  const PairSource src = corpus_pair_source(corpus);
  for (std::size_t k = 0; k < pairs; ++k) {
    Rng rng(stream_seed(11, k));
    const GraphPair gp = src(rng);
    touching += gp.first.class_count() == 3 || gp.second.class_count() == 3;
  }
  ASSERT_GT(touching, 0u);
  EXPECT_EQ(r.excluded(0, 2), touching);
  EXPECT_EQ(r.excluded(2, 3), touching);
  EXPECT_EQ(r.excluded(0, 1), 0u);
}

TEST(AgreementTest, SymmetricAndReproducible) {
  const std::vector<Measure> ms = agreement_catalog();
  const AgreementMatrix a = agreement_experiment(agreement_pair_source(), ms, 60, 42);
  const AgreementMatrix b = agreement_experiment(agreement_pair_source(), ms, 60, 42);
  EXPECT_EQ(a.agree, b.agree);
  EXPECT_EQ(a.comparable, b.comparable);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    EXPECT_EQ(*a.percent(i, i), 100.0);
    for (std::size_t j = 0; j < ms.size(); ++j) {
      EXPECT_EQ(a.agree[i][j], a.agree[j][i]);
      const double p = *a.percent(i, j);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 100.0);
    }
  }
  // A prefix of the pairs reproduces the counts of a shorter run.
  const AgreementMatrix shorter = agreement_experiment(agreement_pair_source(), ms, 30, 42);
  const AgreementMatrix longer = agreement_experiment(agreement_pair_source(), ms, 31, 42);
  EXPECT_LE(longer.agree[0][1] - shorter.agree[0][1], 1u);
  EXPECT_THROW(agreement_experiment(agreement_pair_source(), {}, 10, 1), std::invalid_argument);
  EXPECT_THROW(agreement_experiment(agreement_pair_source(), ms, 0, 1), std::invalid_argument);
}

TEST(HomophilyReportTest, ThreePairs) {
  const HomophilyReport r = homophily_report(complete_partition({2, 2, 2}));
  EXPECT_EQ(r.nodes, 6u);
  EXPECT_EQ(r.edges, 15u);
  EXPECT_EQ(r.classes, 3u);
  const std::vector<double> expected = {0.2, 0.2, 0.0, -0.2, -1.0 / 3.0};
  ASSERT_EQ(r.values.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(r.values[k].value.value(), expected[k], 1e-12) << r.values[k].name;
  }
}

TEST(HomophilyReportTest, CarriesUndefinedMarkers) {
  const HomophilyReport r = homophily_report(complete_graph({0, 0, 1, 1}, 3));
  EXPECT_EQ(r.values[2].name, "class");
  EXPECT_FALSE(r.values[2].value.defined());
  EXPECT_EQ(r.values[2].value.reason(), UndefinedReason::empty_class_degree);
  EXPECT_TRUE(r.values[4].value.defined());
}

TEST(GridTest, EvenSpreadOracle) {
  const std::vector<std::size_t> ms = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> hs = value_range(-1.0, 1.0, 0.2);
  ASSERT_EQ(hs.size(), 11u);
  EXPECT_EQ(hs[5], 0.0);
  EXPECT_EQ(hs.back(), 1.0);
  const GridTable t = adj_vs_unb_grid(ms, hs);
  for (std::size_t r = 0; r < ms.size(); ++r) {
    const double m = static_cast<double>(ms[r]);
    for (std::size_t c = 0; c < hs.size(); ++c) {
      const GridCell& cell = t.at(r, c);
      // Marginals are all 1/m, so h_adj = (p - 1/m) / (1 - 1/m).
      EXPECT_NEAR(cell.h_adjusted, (cell.p - 1.0 / m) / (1.0 - 1.0 / m), 1e-12);
      EXPECT_NEAR(cell.round_trip, hs[c], 1e-10);
      // The pairwise unbiased form agrees on the constructed matrix.
      EXPECT_NEAR(unbiased_homophily_pairwise(even_spread_matrix(ms[r], cell.p)), hs[c], 1e-10);
    }
    EXPECT_NEAR(t.at(r, 5).h_adjusted, 0.0, 1e-12);
    EXPECT_NEAR(t.at(r, 10).h_adjusted, 1.0, 1e-12);
    if (ms[r] == 2) {
      for (std::size_t c = 0; c < hs.size(); ++c) EXPECT_NEAR(t.at(r, c).h_adjusted, hs[c], 1e-12);
    }
  }
}

TEST(GridTest, DocumentedCells) {
  const GridTable t = adj_vs_unb_grid({3}, {-1.0, 0.6});
  EXPECT_NEAR(t.at(0, 0).h_adjusted, -0.5, 1e-12);
  EXPECT_NEAR(t.at(0, 1).p, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.at(0, 1).h_adjusted, 0.5, 1e-12);
  EXPECT_THROW(adj_vs_unb_grid({1}, {0.0}), std::invalid_argument);
  EXPECT_THROW(adj_vs_unb_grid({3}, {1.5}), std::invalid_argument);
}

TEST(MonteCarloTest, ConstantGeneratorHasZeroSpread) {
  const auto gen = [](std::uint64_t) { return complete_partition({2, 2, 2}); };
  const std::vector<MeasureStats> s = monte_carlo(gen, report_catalog(), 20, 5);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0].defined, 20u);
  EXPECT_NEAR(s[0].mean, 0.2, 1e-12);
  EXPECT_NEAR(s[0].stddev, 0.0, 1e-12);
  EXPECT_NEAR(s[4].mean, -1.0 / 3.0, 1e-12);
}

TEST(MonteCarloTest, ErdosRenyiEdgeHomophilyMean) {
  // Without self-loops the expected intra-class fraction on 90:10 classes is
  // (C(90,2) + C(10,2)) / C(100,2).
  const auto gen = [](std::uint64_t s) { return erdos_renyi(100, 0.5, {90, 10}, false, s); };
  const std::vector<MeasureStats> st = monte_carlo(gen, {make_measure("edge")}, 50, 9);
  const double expected = (90.0 * 89 + 10.0 * 9) / (100.0 * 99);
  EXPECT_NEAR(st[0].mean, expected, 4.0 * st[0].stddev / std::sqrt(50.0) + 1e-3);
}

}  // namespace
}  // namespace homophily
