#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homophily/class_matrix.hpp"
#include "homophily/graph.hpp"

namespace homophily {

/// Absolute tolerance used whenever two homophily values are compared for
/// equality.
inline constexpr double kValueTolerance = 1e-12;

enum class UndefinedReason {
  empty_class_degree,      // some declared class has D_k = 0
  single_class,            // m = 1
  all_nodes_isolated,      // no node has positive degree
  no_edges,                // graph-level input without edges
  degenerate_class_matrix, // class matrix has fewer than two positive entries
  degenerate_denominator,  // a ratio measure has a zero denominator
  invalid_parameter,       // e.g. class fraction zero on a class carrying mass
};

std::string_view reason_code(UndefinedReason r);

/// A homophily value, or a typed marker saying why there is none.
class MeasureValue {
 public:
  static MeasureValue of(double v) { return MeasureValue(v); }
  static MeasureValue undefined(UndefinedReason r) { return MeasureValue(r); }

  bool defined() const noexcept { return value_.has_value(); }
  /// Throws std::logic_error when undefined.
  double value() const;
  std::optional<double> get() const noexcept { return value_; }
  UndefinedReason reason() const noexcept { return reason_; }

 private:
  explicit MeasureValue(double v) : value_(v) {}
  explicit MeasureValue(UndefinedReason r) : reason_(r) {}

  std::optional<double> value_;
  UndefinedReason reason_{UndefinedReason::invalid_parameter};
};

// ---------------------------------------------------------------------------
// Measures on the normalized class matrix

/// Fraction of homophilic edge mass, sum_i c_ii.
double edge_homophily(const NormalizedClassMatrix& c);

/// Adjusted homophily (assortativity coefficient) from class marginals:
/// (sum c_ii - sum a_i^2) / (1 - sum a_i^2). Throws std::domain_error when
/// the denominator vanishes.
double adjusted_homophily(const NormalizedClassMatrix& c);

/// The same quantity written with class degrees:
/// (h_edge - sum D_k^2 / (2W)^2) / (1 - sum D_k^2 / (2W)^2).
double adjusted_homophily_from_degrees(double edge_fraction,
                                       std::span<const double> class_degrees,
                                       double total_weight);

/// Unbiased homophily via the diagonal-only closed form
///   ((sum sqrt c_ii)^2 - 1) / ((sum sqrt c_ii)^2 + 1 - 2 sum c_ii).
double unbiased_homophily(const NormalizedClassMatrix& c);

/// Unbiased homophily via the pairwise definition
///   sum_{i<j} (sqrt(c_ii c_jj) - c_ij) / sum_{i<j} (sqrt(c_ii c_jj) + c_ij).
/// O(m^2); kept as the reference path for the closed form.
double unbiased_homophily_pairwise(const NormalizedClassMatrix& c);

/// unbiased_homophily(c) + alpha * min(sum sqrt c_ii, 1). Requires alpha > 0.
double unbiased_homophily_alpha(const NormalizedClassMatrix& c, double alpha);

/// Adjusted nominal assortativity: the assortativity coefficient with every
/// c_ij replaced by c_ij / (f_i f_j). `fractions` are class node fractions.
/// Throws std::invalid_argument when a class with mass has f_i = 0, and
/// std::domain_error on a zero denominator.
double adjusted_nominal_assortativity(const NormalizedClassMatrix& c,
                                      std::span<const double> fractions);

/// Reference measure that is discontinuous on sum sqrt c_ii = 1:
/// sum sqrt c_ii - 1 below the surface, sum c_ii above it. The branch test
/// absorbs 1e-12 of rounding so that rand(C) lands on the lower branch.
double discontinuous_reference(const NormalizedClassMatrix& c);

// ---------------------------------------------------------------------------
// Measures that need the graph

/// Homophilic weight over total weight, computed from the edge list.
double edge_homophily(const LabeledGraph& g);

/// Mean over nodes with positive degree of (same-label neighbour weight) /
/// degree. A self-loop counts as same-label mass 2w. Isolated nodes are left
/// out of the mean. Throws std::domain_error if every node is isolated.
double node_homophily(const LabeledGraph& g);

/// (1/(m-1)) sum_k [intra_k / D_k - n_k / n]_+. Undefined when m = 1 or
/// some declared class has D_k = 0 (this includes dummy classes).
MeasureValue class_homophily(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Registry

enum class InputKind { graph, matrix };

/// Table columns of the property profile, in report order.
enum class Property {
  continuity,
  maximal_agreement,
  minimal_agreement,
  constant_baseline,
  monotonicity,
  empty_class_tolerance,
  class_symmetry,
};
inline constexpr std::size_t kPropertyCount = 7;
inline constexpr std::array<Property, kPropertyCount> kAllProperties = {
    Property::continuity,       Property::maximal_agreement,
    Property::minimal_agreement, Property::constant_baseline,
    Property::monotonicity,     Property::empty_class_tolerance,
    Property::class_symmetry};

std::string_view property_name(Property p);

/// One cell of a property profile.
enum class Cell {
  pass,
  exempt_single_diagonal,  // holds except when at most one c_ii is nonzero
  fail,
  not_applicable,
};

std::string_view cell_name(Cell c);

using PropertyProfile = std::array<Cell, kPropertyCount>;

struct MeasureDescriptor {
  std::string name;
  InputKind input_kind{InputKind::matrix};
  std::optional<double> alpha;
  /// Class fractions f for adjusted nominal assortativity; empty means
  /// "uniform over the matrix's classes" on matrices and "n_k / n" on graphs.
  std::vector<double> class_fractions;
  /// Property-table row the measure is documented to have, when known.
  std::optional<PropertyProfile> expected_profile;
  std::optional<double> r_max;
  std::optional<double> r_base;
  std::optional<double> r_min;
  /// Violations of minimal agreement and monotonicity on matrices with at
  /// most one nonzero diagonal entry are expected and reported as exempt.
  bool single_diagonal_exemption{false};
};

/// A named pure function on graphs and, for edge-wise measures, on
/// normalized class matrices.
class Measure {
 public:
  using MatrixFn = std::function<MeasureValue(const NormalizedClassMatrix&)>;
  using GraphFn = std::function<MeasureValue(const LabeledGraph&)>;

  /// Edge-wise measure; its graph form evaluates on class_matrix(g).
  Measure(MeasureDescriptor descriptor, MatrixFn on_matrix);
  /// Graph-level measure.
  Measure(MeasureDescriptor descriptor, GraphFn on_graph);
  /// Edge-wise measure whose graph form uses more than the class matrix
  /// (adjusted nominal assortativity reads class sizes from the graph).
  Measure(MeasureDescriptor descriptor, MatrixFn on_matrix, GraphFn on_graph);

  const MeasureDescriptor& descriptor() const noexcept { return descriptor_; }
  const std::string& name() const noexcept { return descriptor_.name; }
  bool is_matrix_level() const noexcept { return static_cast<bool>(on_matrix_); }

  MeasureValue evaluate(const LabeledGraph& g) const;
  /// Throws std::logic_error for graph-level measures.
  MeasureValue evaluate(const NormalizedClassMatrix& c) const;

 private:
  MeasureDescriptor descriptor_;
  MatrixFn on_matrix_;
  GraphFn on_graph_;
};

/// Default alpha for the regularized unbiased measure.
inline constexpr double kDefaultAlpha = 0.05;

/// Builds a measure from its command-line name: edge, node, class, adjusted,
/// unbiased, unbiased-alpha:<alpha>, adj-nominal, discontinuous-ref.
/// Throws std::invalid_argument on unknown names or alpha <= 0.
Measure make_measure(std::string_view name);

/// The six measures of the property table, in table order: edge, node,
/// class, adjusted, unbiased-alpha:<alpha>, unbiased.
std::vector<Measure> property_table_catalog(double alpha = kDefaultAlpha);

/// Names accepted by make_measure (with the default alpha spelled out).
std::vector<std::string> known_measure_names();

}  // namespace homophily
