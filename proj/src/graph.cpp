#include "homophily/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace homophily {

LabeledGraph::LabeledGraph(std::vector<ClassId> labels, std::size_t class_count,
                           std::vector<Edge> edges)
    : labels_(std::move(labels)), class_count_(class_count), edges_(std::move(edges)) {
  if (labels_.empty()) throw std::invalid_argument("graph must have at least one node");
  if (class_count_ == 0) throw std::invalid_argument("class count must be positive");
  for (ClassId y : labels_) {
    if (y >= class_count_) {
      throw std::invalid_argument("label " + std::to_string(y + 1) +
                                  " exceeds declared class count " +
                                  std::to_string(class_count_));
    }
  }
  for (Edge& e : edges_) {
    if (e.u >= labels_.size() || e.v >= labels_.size()) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weights must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
}

LabeledGraph LabeledGraph::with_class_count(std::size_t class_count) const {
  if (class_count < class_count_) {
    throw std::invalid_argument("cannot shrink the declared class count");
  }
  return LabeledGraph(labels_, class_count, edges_);
}

double degree(const LabeledGraph& g, NodeId v) {
  if (v >= g.node_count()) throw std::out_of_range("node id out of range");
  double d = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u == v) d += e.weight;
    if (e.v == v) d += e.weight;
  }
  return d;
}

std::vector<double> degrees(const LabeledGraph& g) {
  std::vector<double> d(g.node_count(), 0.0);
  for (const Edge& e : g.edges()) {
    d[e.u] += e.weight;
    d[e.v] += e.weight;
  }
  return d;
}

ClassAggregates aggregates(const LabeledGraph& g) {
  ClassAggregates agg;
  agg.class_sizes.assign(g.class_count(), 0);
  agg.class_degrees.assign(g.class_count(), 0.0);
  for (ClassId y : g.labels()) ++agg.class_sizes[y];
  for (const Edge& e : g.edges()) {
    agg.class_degrees[g.label(e.u)] += e.weight;
    agg.class_degrees[g.label(e.v)] += e.weight;
    agg.total_weight += e.weight;
  }
  return agg;
}

LabeledGraph preprocess(const LabeledGraph& g, const PreprocessOptions& opts) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (opts.drop_self_loops && e.is_self_loop()) continue;
    edges.push_back(e);
  }
  if (opts.merge_multi_edges) {
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    std::vector<Edge> merged;
    for (const Edge& e : edges) {
      if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
        if (opts.merge_mode == MergeMode::sum_weights) merged.back().weight += e.weight;
        continue;
      }
      merged.push_back(e);
      if (opts.merge_mode == MergeMode::deduplicate) merged.back().weight = 1.0;
    }
    edges = std::move(merged);
  }
  return LabeledGraph(std::vector<ClassId>(g.labels().begin(), g.labels().end()),
                      g.class_count(), std::move(edges));
}

}  // namespace homophily
