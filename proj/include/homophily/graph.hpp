#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace homophily {

using NodeId = std::size_t;
/// Dense class id in [0, class_count). Files and reports use the 1-based
/// form; the in-memory form is 0-based.
using ClassId = std::size_t;

struct Edge {
  NodeId u{0};
  NodeId v{0};
  double weight{1.0};

  bool is_self_loop() const noexcept { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Node-labelled, weighted, undirected multigraph. Self-loops and parallel
/// edges are allowed. Endpoints are stored with u <= v.
///
/// The declared class count may exceed the number of labels in use; the
/// extra classes are empty ("dummy") classes.
class LabeledGraph {
 public:
  /// Throws std::invalid_argument on label >= class_count, non-positive or
  /// non-finite weight, or endpoint >= labels.size().
  LabeledGraph(std::vector<ClassId> labels, std::size_t class_count,
               std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t class_count() const noexcept { return class_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const ClassId> labels() const noexcept { return labels_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  ClassId label(NodeId v) const { return labels_.at(v); }

  /// Same graph declaring `class_count` classes; the new ones are empty.
  /// Throws if `class_count` is smaller than the current count.
  LabeledGraph with_class_count(std::size_t class_count) const;

 private:
  std::vector<ClassId> labels_;
  std::size_t class_count_;
  std::vector<Edge> edges_;
};

struct ClassAggregates {
  std::vector<std::size_t> class_sizes;  // n_k
  std::vector<double> class_degrees;     // D_k
  double total_weight{0.0};              // W, the weighted |E|
};

/// Weighted degree; a self-loop contributes twice its weight.
double degree(const LabeledGraph& g, NodeId v);

/// Degrees of all nodes in one pass over the edge list.
std::vector<double> degrees(const LabeledGraph& g);

ClassAggregates aggregates(const LabeledGraph& g);

enum class MergeMode {
  sum_weights,  // parallel edges collapse into one carrying the total weight
  deduplicate,  // parallel edges collapse into one unit-weight edge
};

struct PreprocessOptions {
  bool drop_self_loops{false};
  bool merge_multi_edges{false};
  MergeMode merge_mode{MergeMode::deduplicate};
};

/// Simplifies the edge list. Merged edges come out sorted by (u, v); without
/// merging, the original edge order is kept. An empty result is legal.
LabeledGraph preprocess(const LabeledGraph& g, const PreprocessOptions& opts);

}  // namespace homophily
