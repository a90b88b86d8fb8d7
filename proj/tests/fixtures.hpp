#pragma once

// Small hand-built inputs shared by the unit tests.

#include <vector>

#include "homophily/class_matrix.hpp"
#include "homophily/graph.hpp"

namespace homophily::testing {

/// Complete simple graph on labels.size() nodes.
inline LabeledGraph complete_graph(std::vector<ClassId> labels, std::size_t m) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < labels.size(); ++u)
    for (NodeId v = u + 1; v < labels.size(); ++v) edges.push_back({u, v, 1.0});
  return LabeledGraph(std::move(labels), m, std::move(edges));
}

/// K6 with three classes of two nodes.
inline LabeledGraph k6_three_pairs() { return complete_graph({0, 0, 1, 1, 2, 2}, 3); }

/// K6 with every node in its own class.
inline LabeledGraph k6_singletons() { return complete_graph({0, 1, 2, 3, 4, 5}, 6); }

/// Multigraph whose class adjacency matrix is
/// [[0,1,0,0],[1,0,0,0],[0,0,2,8],[0,0,8,2]].
inline LabeledGraph four_class_counterexample() {
  std::vector<ClassId> labels = {0, 1, 2, 2, 3, 3};
  std::vector<Edge> edges = {{0, 1}, {2, 3}, {4, 5}};
  for (NodeId u : {2, 3})
    for (NodeId v : {4, 5}) {
      edges.push_back({u, v});
      edges.push_back({u, v});
    }
  return LabeledGraph(std::move(labels), 4, std::move(edges));
}

inline NormalizedClassMatrix four_class_counterexample_matrix() {
  Matrix l{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 8}, {0, 0, 8, 2}};
  return normalize(ClassAdjacency(l));
}

inline NormalizedClassMatrix matrix(std::initializer_list<std::initializer_list<double>> rows) {
  return NormalizedClassMatrix(Matrix(rows));
}

}  // namespace homophily::testing
