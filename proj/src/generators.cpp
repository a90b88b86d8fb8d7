#include "homophily/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "homophily/class_matrix.hpp"
#include "homophily/rng.hpp"

namespace homophily {
namespace {

// Resampling gives up after this many consecutive degenerate draws.
constexpr int kMaxAttempts = 1000;

std::vector<ClassId> block_labels(const std::vector<std::size_t>& sizes) {
  std::vector<ClassId> labels;
  for (ClassId k = 0; k < sizes.size(); ++k) labels.insert(labels.end(), sizes[k], k);
  return labels;
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

void require_sizes(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("at least one class is required");
  if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == 0) {
    throw std::invalid_argument("class sizes sum to zero");
  }
}

std::vector<Edge> draw_edges(const std::vector<ClassId>& labels, const Matrix& probs,
                             bool self_loops, Rng& rng) {
  std::vector<Edge> edges;
  const std::size_t n = labels.size();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = self_loops ? u : u + 1; v < n; ++v) {
      if (rng.bernoulli(probs(labels[u], labels[v]))) edges.push_back({u, v, 1.0});
    }
  }
  return edges;
}

}  // namespace

LabeledGraph block_model(const std::vector<std::size_t>& class_sizes, const Matrix& probs,
                         bool self_loops, std::uint64_t seed, OnDegenerate policy) {
  require_sizes(class_sizes);
  const std::size_t m = class_sizes.size();
  if (probs.size() != m) throw std::invalid_argument("probability matrix must be m x m");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      require_probability(probs(i, j), "edge probability");
      if (probs(i, j) != probs(j, i)) {
        throw std::invalid_argument("probability matrix must be symmetric");
      }
    }
  const std::vector<ClassId> labels = block_labels(class_sizes);
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Edge> edges = draw_edges(labels, probs, self_loops, rng);
    if (!edges.empty()) return LabeledGraph(labels, m, std::move(edges));
    if (policy == OnDegenerate::error) throw DegenerateGraph("generated graph has no edges");
  }
  throw DegenerateGraph("could not generate a graph with at least one edge");
}

LabeledGraph erdos_renyi(std::size_t n, double p, const std::vector<std::size_t>& class_sizes,
                         bool self_loops, std::uint64_t seed, OnDegenerate policy) {
  require_sizes(class_sizes);
  require_probability(p, "p");
  if (std::accumulate(class_sizes.begin(), class_sizes.end(), std::size_t{0}) != n) {
    throw std::invalid_argument("class sizes must sum to n");
  }
  return block_model(class_sizes, Matrix(class_sizes.size(), p), self_loops, seed, policy);
}

LabeledGraph sbm(const std::vector<std::size_t>& class_sizes, double p_in, double p_out,
                 std::uint64_t seed, OnDegenerate policy) {
  require_probability(p_in, "p_in");
  require_probability(p_out, "p_out");
  const std::size_t m = class_sizes.size();
  Matrix probs(m, p_out);
  for (std::size_t i = 0; i < m; ++i) probs(i, i) = p_in;
  return block_model(class_sizes, probs, false, seed, policy);
}

LabeledGraph agreement_random_graph(std::uint64_t seed) {
  constexpr std::size_t n = 100;
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::size_t m = rng.uniform_int(2, 10);
    // m - 1 distinct thresholds from {1..99} by partial Fisher-Yates.
    std::vector<std::size_t> pool(99);
    std::iota(pool.begin(), pool.end(), 1);
    for (std::size_t k = 0; k + 1 < m; ++k) {
      std::swap(pool[k], pool[rng.uniform_int(k, pool.size() - 1)]);
    }
    std::vector<std::size_t> cuts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);
    // With 1-based node numbers, class k covers (a_{k-1}, a_k]; node 1 is
    // put in the first class.
    std::vector<std::size_t> sizes(m);
    std::size_t prev = 0;
    for (std::size_t k = 0; k < m; ++k) {
      sizes[k] = cuts[k] - prev;
      prev = cuts[k];
    }
    Matrix probs(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        probs(i, j) = rng.uniform();
        probs(j, i) = probs(i, j);
      }
    const std::vector<ClassId> labels = block_labels(sizes);
    std::vector<Edge> edges = draw_edges(labels, probs, false, rng);
    if (edges.empty()) continue;
    LabeledGraph g(labels, m, std::move(edges));
    if (build_class_adjacency(g).entries().nonzero_count() >= 2) return g;
  }
  throw DegenerateGraph("could not generate a non-degenerate agreement graph");
}

LabeledGraph complete_partition(const std::vector<std::size_t>& class_sizes) {
  require_sizes(class_sizes);
  std::vector<ClassId> labels = block_labels(class_sizes);
  if (labels.size() < 2) throw std::invalid_argument("complete partition needs two nodes");
  std::vector<Edge> edges;
  for (NodeId u = 0; u < labels.size(); ++u)
    for (NodeId v = u + 1; v < labels.size(); ++v) edges.push_back({u, v, 1.0});
  return LabeledGraph(std::move(labels), class_sizes.size(), std::move(edges));
}

LabeledGraph generate(const GeneratorConfig& c) {
  if (c.kind == "erdos-renyi") {
    const std::size_t n = std::accumulate(c.class_sizes.begin(), c.class_sizes.end(), std::size_t{0});
    return erdos_renyi(n, c.p, c.class_sizes, c.self_loops, c.seed);
  }
  if (c.kind == "sbm") return sbm(c.class_sizes, c.p_in, c.p_out, c.seed);
  if (c.kind == "agreement-random") return agreement_random_graph(c.seed);
  if (c.kind == "complete-partition") return complete_partition(c.class_sizes);
  throw std::invalid_argument("unknown generator '" + c.kind + "'");
}

}  // namespace homophily
