#pragma once

// Executable versions of the desirable properties of homophily measures.
//
// Every check combines a few pinned deterministic witnesses with randomized
// trials. Trial i draws its input from stream_seed(options.seed, i), so a
// report is a deterministic function of (seed, trial count) and every
// violation can be replayed from the seed it carries.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homophily/class_matrix.hpp"
#include "homophily/graph.hpp"
#include "homophily/measures.hpp"
#include "homophily/rng.hpp"

namespace homophily {

enum class Check {
  maximal_agreement,
  minimal_agreement,
  constant_baseline,
  homo_monotonicity,
  hetero_monotonicity,
  empty_class_tolerance,
  class_symmetry,
  continuity,
};

inline constexpr std::array<Check, 8> kAllChecks = {
    Check::maximal_agreement,   Check::minimal_agreement,     Check::constant_baseline,
    Check::homo_monotonicity,   Check::hetero_monotonicity,   Check::empty_class_tolerance,
    Check::class_symmetry,      Check::continuity};

std::string_view check_name(Check c);

/// Random normalized class matrices: m uniform in [min_classes, max_classes],
/// upper-triangle entries uniform(0,1), each zeroed with zero_probability,
/// then symmetrized and normalized. Invalid draws are resampled.
struct MatrixSampler {
  std::size_t min_classes{2};
  std::size_t max_classes{8};
  double zero_probability{0.3};

  NormalizedClassMatrix sample(Rng& rng) const;
  /// Only diagonal mass; at least two classes carry it.
  NormalizedClassMatrix sample_fully_homophilic(Rng& rng) const;
  /// Zero diagonal.
  NormalizedClassMatrix sample_fully_heterophilic(Rng& rng) const;
};

/// Random simple graphs in which every node has at least one neighbour, so
/// every class has positive degree.
struct GraphSampler {
  std::size_t min_nodes{6};
  std::size_t max_nodes{30};
  std::size_t min_classes{2};
  std::size_t max_classes{4};

  LabeledGraph sample(Rng& rng) const;
  /// Intra-class edges only; every class has at least two nodes.
  LabeledGraph sample_fully_homophilic(Rng& rng) const;
  /// Inter-class edges only.
  LabeledGraph sample_fully_heterophilic(Rng& rng) const;
  /// Complete graph with self-loops and weights w_uv = s_u s_v (self-loop
  /// weight s_v^2 / 2): its class matrix equals rand of itself exactly, so
  /// the structure is independent of the labels.
  LabeledGraph sample_label_independent(Rng& rng) const;
};

struct CheckOptions {
  std::size_t trials{1000};
  std::uint64_t seed{1};
  /// Absolute tolerance for "equal" comparisons.
  double tolerance{kValueTolerance};
  /// A strict increase must exceed this margin.
  double increase_slack{1e-15};
  /// Decreases beyond this are reported as hard violations.
  double decrease_tolerance{1e-12};
  /// Continuity probe: relative perturbation size and Lipschitz factor.
  double continuity_delta{1e-7};
  double continuity_factor{100.0};
  MatrixSampler matrices{};
  GraphSampler graphs{};
};

/// One failed comparison. `matrices`/`graphs` hold every input needed to
/// recompute `values`: for transforms (input, transformed), for agreement
/// and baseline checks (reference, offending).
struct Violation {
  std::optional<std::uint64_t> trial_seed;  // empty for pinned witnesses
  std::string witness;                      // name of the pinned witness, if any
  std::vector<NormalizedClassMatrix> matrices;
  std::vector<LabeledGraph> graphs;
  std::vector<double> values;
  std::string description;
};

enum class Verdict { pass, fail, not_applicable };

std::string_view verdict_name(Verdict v);

struct PropertyReport {
  std::string measure;
  Check check{Check::class_symmetry};
  std::size_t trials{0};
  std::vector<Violation> violations;
  /// Violations excused by the measure's single-diagonal exemption.
  std::vector<Violation> exempted;
  Verdict verdict{Verdict::pass};
  /// The common value found by agreement and baseline checks.
  std::optional<double> empirical_constant;
  std::string note;
};

PropertyReport check_maximal_agreement(const Measure& h, const CheckOptions& opts = {});
PropertyReport check_minimal_agreement(const Measure& h, const CheckOptions& opts = {});
PropertyReport check_constant_baseline(const Measure& h, const CheckOptions& opts = {});
PropertyReport check_homo_monotonicity(const Measure& h, const CheckOptions& opts = {});
PropertyReport check_hetero_monotonicity(const Measure& h, const CheckOptions& opts = {});
PropertyReport check_empty_class_tolerance(const Measure& h, const CheckOptions& opts = {});
PropertyReport check_class_symmetry(const Measure& h, const CheckOptions& opts = {});
/// Heuristic: flags a jump that does not shrink when the perturbation is
/// refined. Sampling cannot prove continuity; a pass is evidence only.
PropertyReport check_continuity(const Measure& h, const CheckOptions& opts = {});

PropertyReport run_check(const Measure& h, Check c, const CheckOptions& opts = {});

/// Re-derives a violation: regenerates the trial input from its seed (for
/// random trials) and re-evaluates the measure. True when inputs and values
/// reproduce bit for bit.
bool replay_violation(const Measure& h, Check c, const Violation& v,
                      const CheckOptions& opts = {});

struct ProfileRow {
  std::string measure;
  PropertyProfile cells{};
  std::vector<PropertyReport> reports;
};

/// Runs every check and folds the results into table cells. The
/// monotonicity cell combines the homo- and hetero- checks.
ProfileRow full_profile(const Measure& h, const CheckOptions& opts = {});

/// Cells of `row` that differ from the measure's documented profile.
std::vector<Property> profile_mismatches(const Measure& h, const ProfileRow& row);

// ---------------------------------------------------------------------------
// Continuity probe used by check_continuity, exposed for direct use.

struct ContinuityProbe {
  double value_a{0.0};
  double value_b{0.0};
  double jump{0.0};
  double distance{0.0};  // max-norm distance of the two matrices
};

ContinuityProbe probe_pair(const Measure& h, const NormalizedClassMatrix& a,
                           const NormalizedClassMatrix& b);

// ---------------------------------------------------------------------------
// Counterexamples for adjusted nominal assortativity.

struct Disproof {
  Check check{Check::maximal_agreement};
  std::string description;
  double value_a{0.0};
  double value_b{0.0};
  double gap() const;
};

/// Pairs of inputs on which the property demands equal values but adjusted
/// nominal assortativity gives different ones: fully homophilic C with two
/// class-size vectors, complete heterophilic configurations with 3 and 4
/// equal classes, and one label-independent C with two class-size vectors.
std::vector<Disproof> adjusted_nominal_disproofs();

}  // namespace homophily
