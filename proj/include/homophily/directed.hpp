#pragma once

// Class matrices of directed graphs, the directed label-independent
// baseline, and witnesses showing that some property pairs cannot hold
// together for any directed measure.

#include <boost/rational.hpp>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homophily/dense_matrix.hpp"

namespace homophily {

using Rational = boost::rational<long long>;
using ExactMatrix = DenseMatrix<Rational>;

/// c_ij is the fraction of directed edges going from class i to class j.
/// Not necessarily symmetric; sums to one and has at least two positive
/// entries.
class DirectedClassMatrix {
 public:
  /// Throws std::invalid_argument if the invariants fail (tolerance 1e-12).
  explicit DirectedClassMatrix(Matrix entries);

  /// Normalizes a matrix of directed edge counts or weights.
  static DirectedClassMatrix from_counts(const Matrix& counts);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& entries() const noexcept { return entries_; }

  /// a_i: out-marginals (row sums).
  std::vector<double> out_marginals() const { return entries_.row_sums(); }
  /// b_j: in-marginals (column sums).
  std::vector<double> in_marginals() const { return entries_.column_sums(); }

  friend bool operator==(const DirectedClassMatrix&, const DirectedClassMatrix&) = default;

 private:
  Matrix entries_;
};

/// rand(C)_ij = a_i b_j for any entry type.
template <typename T>
DenseMatrix<T> outer_marginals(const DenseMatrix<T>& c) {
  const std::vector<T> a = c.row_sums();
  const std::vector<T> b = c.column_sums();
  DenseMatrix<T> r(c.size(), T{});
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) r(i, j) = a[i] * b[j];
  return r;
}

/// (1 + eps) C - eps E_ij for any entry type. Requires i != j and
/// 0 < eps <= (1 + eps) c_ij.
template <typename T>
DenseMatrix<T> remove_directed_entry(const DenseMatrix<T>& c, std::size_t i, std::size_t j,
                                     const T& eps) {
  if (i >= c.size() || j >= c.size()) throw std::out_of_range("class index out of range");
  if (i == j) throw std::invalid_argument("heterophilic removal needs i != j");
  if (!(eps > T{})) throw std::invalid_argument("eps must be positive");
  const T one(1);
  if (eps > (one + eps) * c(i, j)) {
    throw std::invalid_argument("eps exceeds (1+eps)c_ij: entry would become negative");
  }
  DenseMatrix<T> out(c.size(), T{});
  for (std::size_t r = 0; r < c.size(); ++r)
    for (std::size_t s = 0; s < c.size(); ++s) out(r, s) = (one + eps) * c(r, s);
  out(i, j) -= eps;
  return out;
}

/// The largest admissible eps, c_ij / (1 - c_ij); removing it zeroes c_ij.
template <typename T>
T max_directed_removal(const DenseMatrix<T>& c, std::size_t i, std::size_t j) {
  const T one(1);
  if (!(c(i, j) < one)) throw std::invalid_argument("c_ij must be below one");
  return c(i, j) / (one - c(i, j));
}

/// Throws std::invalid_argument when the result has fewer than two positive
/// entries.
DirectedClassMatrix directed_rand(const DirectedClassMatrix& c);

/// (1 + eps) C - eps E_ij; sums to one by construction. Entries within
/// 1e-15 of zero are snapped to zero.
DirectedClassMatrix remove_heterophilic_directed(const DirectedClassMatrix& c, std::size_t i,
                                                 std::size_t j, double eps);

/// (1 - eps) C + eps rand(C).
DirectedClassMatrix partially_randomize(const DirectedClassMatrix& c, double eps);

/// Sum of the diagonal, the directed analogue of edge homophily.
double directed_edge_homophily(const DirectedClassMatrix& c);

Matrix to_double(const ExactMatrix& m);

// ---------------------------------------------------------------------------
// Contradiction witnesses

struct WitnessFact {
  std::string statement;
  bool holds{false};
};

struct ContradictionWitness {
  std::string name;
  /// Exact matrices, in order of appearance in the argument.
  std::vector<std::pair<std::string, ExactMatrix>> matrices;
  std::vector<WitnessFact> facts;
  std::string consequence;

  bool all_hold() const;
};

/// K (fully heterophilic) and L (partly homophilic) are both fixed points of
/// rand: a constant baseline gives them equal values, while minimal
/// agreement requires h(K) < h(L).
ContradictionWitness witness_const_vs_min();

/// T and L are both fixed points of rand, and L arises from T by deleting
/// heterophilic entries only: a constant baseline gives them equal values,
/// while hetero-monotonicity requires h(T) < h(L).
ContradictionWitness witness_const_vs_hetero();

// ---------------------------------------------------------------------------
// Randomization monotonicity

struct RandomizationStep {
  double eps{0.0};
  double value{0.0};
  bool ok{false};
};

struct RandomizationReport {
  double r_base{0.0};
  /// True when r_base was taken as h(rand(C)) because none was supplied.
  bool baseline_from_input{false};
  double initial{0.0};
  std::vector<RandomizationStep> steps;
  bool pass{false};
  std::string note;
};

using DirectedMeasure = std::function<double(const DirectedClassMatrix&)>;

/// Evaluates h((1 - eps) C + eps rand(C)) for each eps in the grid (values in
/// (0, 1], sorted ascending) and checks
///   h(C) < h(mix) <= R_base  when h(C) < R_base,
///   h(C) > h(mix) >= R_base  when h(C) > R_base,
///   h(mix) = R_base          when h(C) = R_base,
/// plus monotone movement along the grid. Comparisons use `tolerance`.
RandomizationReport check_randomization_monotonicity(const DirectedMeasure& h,
                                                     const DirectedClassMatrix& c,
                                                     const std::vector<double>& eps_grid,
                                                     std::optional<double> r_base = std::nullopt,
                                                     double tolerance = 1e-12);

}  // namespace homophily
