#include <gtest/gtest.h>

#include <cmath>

#include "homophily/properties.hpp"

namespace homophily {
namespace {

CheckOptions small(std::size_t trials = 300, std::uint64_t seed = 7) {
  CheckOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

const Violation* find_witness(const PropertyReport& r, std::string_view name) {
  for (const auto& v : r.violations)
    if (v.witness == name) return &v;
  for (const auto& v : r.exempted)
    if (v.witness == name) return &v;
  return nullptr;
}

TEST(SamplerTest, ProducesRequestedShapes) {
  Rng rng(3);
  const MatrixSampler ms;
  const GraphSampler gs;
  for (int i = 0; i < 200; ++i) {
    const auto homo = ms.sample_fully_homophilic(rng);
    EXPECT_EQ(homo.entries().nonzero_count(), homo.entries().nonzero_diagonal_count());
    const auto hetero = ms.sample_fully_heterophilic(rng);
    EXPECT_EQ(hetero.entries().nonzero_diagonal_count(), 0u);
    const auto c = ms.sample(rng);
    EXPECT_GE(c.size(), 2u);
    EXPECT_LE(c.size(), 8u);

    const LabeledGraph g = gs.sample_fully_homophilic(rng);
    for (const Edge& e : g.edges()) EXPECT_EQ(g.label(e.u), g.label(e.v));
    for (double d : aggregates(g).class_degrees) EXPECT_GT(d, 0.0);
    const LabeledGraph h = gs.sample_fully_heterophilic(rng);
    for (const Edge& e : h.edges()) EXPECT_NE(h.label(e.u), h.label(e.v));

    // Label-independent graphs have a rank-one class matrix.
    const LabeledGraph li = gs.sample_label_independent(rng);
    const NormalizedClassMatrix cm = class_matrix(li);
    const NormalizedClassMatrix r = rand_baseline(cm);
    for (std::size_t a = 0; a < cm.size(); ++a)
      for (std::size_t b = 0; b < cm.size(); ++b) EXPECT_NEAR(cm(a, b), r(a, b), 1e-14);
  }
}

TEST(PropertiesTest, UnbiasedConstantBaselineIsZero) {
  const PropertyReport r = check_constant_baseline(make_measure("unbiased"), small(2000));
  EXPECT_EQ(r.verdict, Verdict::pass);
  ASSERT_TRUE(r.empirical_constant);
  EXPECT_NEAR(*r.empirical_constant, 0.0, 1e-10);
}

TEST(PropertiesTest, AlphaConstantsMatchDocumentedValues) {
  const Measure h = make_measure("unbiased-alpha:0.5");
  const PropertyReport base = check_constant_baseline(h, small());
  EXPECT_EQ(base.verdict, Verdict::pass);
  EXPECT_NEAR(*base.empirical_constant, 0.5, 1e-12);
  const PropertyReport max = check_maximal_agreement(h, small());
  EXPECT_EQ(max.verdict, Verdict::pass);
  EXPECT_NEAR(*max.empirical_constant, 1.5, 1e-12);
  const PropertyReport min = check_minimal_agreement(h, small());
  EXPECT_EQ(min.verdict, Verdict::pass);
  EXPECT_NEAR(*min.empirical_constant, -1.0, 1e-12);
}

TEST(PropertiesTest, EdgeBaselineWitness) {
  const PropertyReport r = check_constant_baseline(make_measure("edge"), small(10));
  EXPECT_EQ(r.verdict, Verdict::fail);
  const Violation* v = find_witness(r, "random-98-2");
  ASSERT_NE(v, nullptr);
  EXPECT_NEAR(v->values.front(), 0.5, 1e-12);
  EXPECT_NEAR(v->values.back(), 0.9608, 1e-12);
}

TEST(PropertiesTest, AdjustedMinimalAgreementWitness) {
  const PropertyReport r = check_minimal_agreement(make_measure("adjusted"), small(10));
  EXPECT_EQ(r.verdict, Verdict::fail);
  const Violation* v = find_witness(r, "complete-4-distinct-labels");
  ASSERT_NE(v, nullptr);
  EXPECT_NEAR(v->values[0], -0.5, 1e-12);
  EXPECT_NEAR(v->values[1], -1.0 / 3.0, 1e-12);
}

TEST(PropertiesTest, AdjustedHeteroMonotonicityWitness) {
  const PropertyReport r = check_hetero_monotonicity(make_measure("adjusted"), small(10));
  EXPECT_EQ(r.verdict, Verdict::fail);
  const Violation* v = find_witness(r, "four-class-edge-deletion");
  ASSERT_NE(v, nullptr);
  EXPECT_NEAR(v->values[0], -0.4043, 5e-4);
  EXPECT_NEAR(v->values[1], -0.6, 1e-12);
}

TEST(PropertiesTest, ClassHomophilyUndefinedWithDummyClass) {
  const PropertyReport r = check_empty_class_tolerance(make_measure("class"), small(20));
  EXPECT_EQ(r.verdict, Verdict::fail);
  const Violation* v = find_witness(r, "complete-pairs-dummy-class");
  ASSERT_NE(v, nullptr);
  EXPECT_TRUE(std::isnan(v->values[1]));
}

TEST(PropertiesTest, NodeHomophilyUnchangedByDeletingIsolatedPairEdge) {
  const PropertyReport r = check_hetero_monotonicity(make_measure("node"), small(0));
  EXPECT_EQ(r.verdict, Verdict::fail);
  const Violation* v = find_witness(r, "isolated-heterophilic-pair");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->values[0], v->values[1]);
  // The same deletion increases edge homophily.
  EXPECT_GT(edge_homophily(v->graphs[1]), edge_homophily(v->graphs[0]));
}

TEST(PropertiesTest, UnbiasedViolationsAreOnlyOnSingleDiagonalInputs) {
  const Measure h = make_measure("unbiased");
  for (Check c : {Check::minimal_agreement, Check::homo_monotonicity, Check::hetero_monotonicity}) {
    const PropertyReport r = run_check(h, c, small(2000));
    EXPECT_TRUE(r.violations.empty()) << check_name(c);
    EXPECT_FALSE(r.exempted.empty()) << check_name(c);
    for (const Violation& v : r.exempted) {
      // The input under test is the last-but-one matrix for transforms and
      // the last one for agreement checks.
      const NormalizedClassMatrix& input =
          c == Check::minimal_agreement ? v.matrices.back() : v.matrices[v.matrices.size() - 2];
      EXPECT_LE(input.entries().nonzero_diagonal_count(), 1u);
    }
  }
}

TEST(PropertiesTest, ContinuityProbe) {
  auto l = [](double e) {
    return NormalizedClassMatrix(Matrix{{0.25 + e, 0.25 - e}, {0.25 - e, 0.25 + e}});
  };
  const ContinuityProbe d = probe_pair(make_measure("discontinuous-ref"), l(0.0), l(1e-6));
  EXPECT_GE(d.jump, 0.5);
  EXPECT_NEAR(d.distance, 1e-6, 1e-15);
  const ContinuityProbe u = probe_pair(make_measure("unbiased"), l(0.0), l(1e-6));
  EXPECT_LT(u.jump, 1e-4);
  const ContinuityProbe e = probe_pair(make_measure("edge"), l(0.0), l(1e-6));
  EXPECT_LE(e.jump, 4.0 * e.distance + 1e-15);

  const PropertyReport r = check_continuity(make_measure("discontinuous-ref"), small(50));
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_NE(find_witness(r, "balanced-two-class-surface"), nullptr);
  EXPECT_FALSE(r.note.empty());
  EXPECT_EQ(check_continuity(make_measure("unbiased"), small(500)).verdict, Verdict::pass);
  EXPECT_EQ(check_continuity(make_measure("node"), small()).verdict, Verdict::not_applicable);
}

TEST(PropertiesTest, ClassSymmetryHoldsForAll) {
  for (const char* name : {"edge", "node", "class", "adjusted", "unbiased", "unbiased-alpha",
                           "adj-nominal", "discontinuous-ref"}) {
    EXPECT_EQ(check_class_symmetry(make_measure(name), small(200)).verdict, Verdict::pass) << name;
  }
}

TEST(PropertiesTest, ViolationsReplay) {
  struct Case {
    const char* measure;
    Check check;
  };
  for (const Case& c : {Case{"adjusted", Check::hetero_monotonicity},
                        Case{"adjusted", Check::minimal_agreement},
                        Case{"edge", Check::constant_baseline}, Case{"class", Check::minimal_agreement},
                        Case{"node", Check::homo_monotonicity},
                        Case{"unbiased", Check::homo_monotonicity}}) {
    const Measure h = make_measure(c.measure);
    const CheckOptions opts = small(200);
    const PropertyReport r = run_check(h, c.check, opts);
    std::vector<const Violation*> all;
    for (const auto& v : r.violations) all.push_back(&v);
    for (const auto& v : r.exempted) all.push_back(&v);
    ASSERT_FALSE(all.empty()) << c.measure;
    bool saw_random = false;
    for (const Violation* v : all) {
      saw_random = saw_random || v->trial_seed.has_value();
      EXPECT_TRUE(replay_violation(h, c.check, *v, opts)) << c.measure << " " << v->description;
    }
    EXPECT_TRUE(saw_random) << c.measure;

    Violation tampered = *all.back();
    tampered.values.back() += 1.0;
    EXPECT_FALSE(replay_violation(h, c.check, tampered, opts));
  }
}

TEST(PropertiesTest, ReportsAreDeterministic) {
  const Measure h = make_measure("adjusted");
  const PropertyReport a = check_hetero_monotonicity(h, small(300, 99));
  const PropertyReport b = check_hetero_monotonicity(h, small(300, 99));
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].trial_seed, b.violations[i].trial_seed);
    EXPECT_EQ(a.violations[i].values, b.violations[i].values);
  }
}

TEST(PropertiesTest, FullProfiles) {
  const CheckOptions opts = small(500);
  for (const Measure& h : property_table_catalog()) {
    const ProfileRow row = full_profile(h, opts);
    const std::vector<Property> mismatches = profile_mismatches(h, row);
    if (h.name() == "node") {
      // Strict monotonicity fails for node homophily: deleting the edge
      // between two nodes without same-class neighbours changes nothing.
      // The documented row marks the column as satisfied.
      EXPECT_EQ(mismatches, std::vector<Property>{Property::monotonicity});
    } else {
      EXPECT_TRUE(mismatches.empty()) << h.name();
    }
    for (const PropertyReport& r : row.reports) {
      EXPECT_EQ(r.verdict == Verdict::fail, !r.violations.empty());
    }
  }
  const Measure d = make_measure("discontinuous-ref");
  EXPECT_TRUE(profile_mismatches(d, full_profile(d, opts)).empty());
}

TEST(PropertiesTest, AdjustedNominalDisproofs) {
  const std::vector<Disproof> ds = adjusted_nominal_disproofs();
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds[0].check, Check::maximal_agreement);
  EXPECT_EQ(ds[1].check, Check::minimal_agreement);
  EXPECT_EQ(ds[2].check, Check::constant_baseline);
  for (const Disproof& d : ds) EXPECT_GT(d.gap(), 1e-6) << d.description;
}

}  // namespace
}  // namespace homophily
