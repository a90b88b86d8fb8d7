#pragma once

// Seeded random labeled graphs. Node labels are assigned in contiguous
// blocks: the first class_sizes[0] nodes get class 0, and so on. Every
// generator is a pure function of its arguments.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "homophily/dense_matrix.hpp"
#include "homophily/graph.hpp"

namespace homophily {

/// What to do when a draw comes out degenerate (no edges, or for the
/// agreement generator a class matrix with fewer than two positive entries).
enum class OnDegenerate { resample, error };

/// Thrown by generators with OnDegenerate::error.
class DegenerateGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every unordered pair (and, with self_loops, every (v, v)) becomes an
/// edge independently with probability p.
LabeledGraph erdos_renyi(std::size_t n, double p, const std::vector<std::size_t>& class_sizes,
                         bool self_loops, std::uint64_t seed,
                         OnDegenerate policy = OnDegenerate::resample);

/// Two-parameter block model: intra-class pairs with p_in, inter-class
/// pairs with p_out.
LabeledGraph sbm(const std::vector<std::size_t>& class_sizes, double p_in, double p_out,
                 std::uint64_t seed, OnDegenerate policy = OnDegenerate::resample);

/// Block model with a full symmetric matrix of per-class-pair probabilities.
LabeledGraph block_model(const std::vector<std::size_t>& class_sizes, const Matrix& probabilities,
                         bool self_loops, std::uint64_t seed,
                         OnDegenerate policy = OnDegenerate::resample);

/// Random graph for the agreement experiment: 100 nodes, m uniform in
/// {2..10}, m-1 distinct thresholds from {1..99} cutting the node range into
/// contiguous classes (node 1 belongs to the first class), one uniform
/// edge probability per class pair. Draws whose class matrix has fewer than
/// two positive entries are redrawn.
LabeledGraph agreement_random_graph(std::uint64_t seed);

/// Complete simple graph with block labels. Throws std::invalid_argument for
/// fewer than two nodes.
LabeledGraph complete_partition(const std::vector<std::size_t>& class_sizes);

/// Parameters for the CLI `generate` command.
struct GeneratorConfig {
  std::string kind;  // erdos-renyi, sbm, agreement-random, complete-partition
  std::vector<std::size_t> class_sizes;
  double p{0.5};
  double p_in{0.3};
  double p_out{0.2};
  bool self_loops{false};
  std::uint64_t seed{1};
};

/// Dispatches on config.kind. Throws std::invalid_argument on unknown kinds.
LabeledGraph generate(const GeneratorConfig& config);

}  // namespace homophily
