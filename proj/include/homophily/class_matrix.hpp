#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "homophily/dense_matrix.hpp"
#include "homophily/graph.hpp"

namespace homophily {

/// Tolerance for symmetry and sum-to-one checks on construction.
inline constexpr double kMatrixTolerance = 1e-12;

/// Class adjacency matrix L: l_ij is the edge weight between classes i and
/// j, and l_ii is twice the intra-class weight, so sum(L) = 2W.
class ClassAdjacency {
 public:
  /// Validates symmetry and non-negativity.
  explicit ClassAdjacency(Matrix entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& entries() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

/// Normalized class adjacency matrix C = L / sum(L). Every instance is
/// symmetric, non-negative, sums to one and has at least two positive
/// entries; constructors reject anything else rather than repairing it.
class NormalizedClassMatrix {
 public:
  /// Throws std::invalid_argument if the invariants do not hold within
  /// kMatrixTolerance.
  explicit NormalizedClassMatrix(Matrix entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& entries() const noexcept { return entries_; }

  /// a_i = sum_k c_ik.
  std::vector<double> marginals() const { return entries_.row_sums(); }

  friend bool operator==(const NormalizedClassMatrix&,
                         const NormalizedClassMatrix&) = default;

 private:
  Matrix entries_;
};

/// Throws if the graph has no edges.
ClassAdjacency build_class_adjacency(const LabeledGraph& g);

/// Throws on an all-zero matrix or one with a single positive entry.
NormalizedClassMatrix normalize(const ClassAdjacency& l);

/// Shorthand for normalize(build_class_adjacency(g)).
NormalizedClassMatrix class_matrix(const LabeledGraph& g);

/// rand(C)_ij = a_i a_j: the label-independent matrix with C's marginals.
NormalizedClassMatrix rand_baseline(const NormalizedClassMatrix& c);

/// (1 - eps) C + eps E_ii. Requires 0 < eps < 1.
NormalizedClassMatrix add_homophilic_mass(const NormalizedClassMatrix& c, std::size_t i,
                                          double eps);

/// Largest eps accepted by remove_heterophilic_mass for the pair (i, j):
/// the value at which c_ij reaches zero, 2 c_ij / (1 - 2 c_ij).
double max_heterophilic_removal(const NormalizedClassMatrix& c, std::size_t i,
                                std::size_t j);

/// (1 + eps) C - (eps/2) E_ij - (eps/2) E_ji for i != j and
/// 0 < eps <= 2 (1 + eps) c_ij. At the bound the (i, j) entries become
/// exactly zero.
NormalizedClassMatrix remove_heterophilic_mass(const NormalizedClassMatrix& c,
                                               std::size_t i, std::size_t j, double eps);

/// Appends an all-zero row and column (a dummy class).
NormalizedClassMatrix pad_empty_class(const NormalizedClassMatrix& c);

/// Output entry (sigma[i], sigma[j]) equals input entry (i, j).
NormalizedClassMatrix permute_classes(const NormalizedClassMatrix& c,
                                      std::span<const std::size_t> sigma);

/// Throws unless sigma is a bijection on {0, ..., m-1}.
void validate_permutation(std::span<const std::size_t> sigma, std::size_t m);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> sigma);

}  // namespace homophily
