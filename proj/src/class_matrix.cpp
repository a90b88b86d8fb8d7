#include "homophily/class_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace homophily {
namespace {

void require_symmetric_nonnegative(const Matrix& m, const char* what) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument(std::string(what) + ": empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = m(i, j);
      if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument(std::string(what) + ": entries must be finite and >= 0");
      }
      if (std::abs(x - m(j, i)) > kMatrixTolerance * std::max(1.0, std::abs(x))) {
        throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
      }
    }
  }
}

// Rounding can leave -1e-17 where exact arithmetic gives zero.
double snap_to_zero(double x, double scale) {
  return std::abs(x) <= 1e-15 * scale ? 0.0 : x;
}

}  // namespace

ClassAdjacency::ClassAdjacency(Matrix entries) : entries_(std::move(entries)) {
  require_symmetric_nonnegative(entries_, "class adjacency");
}

NormalizedClassMatrix::NormalizedClassMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_symmetric_nonnegative(entries_, "normalized class matrix");
  if (std::abs(entries_.sum() - 1.0) > kMatrixTolerance) {
    throw std::invalid_argument("normalized class matrix: entries must sum to 1");
  }
  if (entries_.nonzero_count() < 2) {
    throw std::invalid_argument(
        "normalized class matrix: at least two entries must be positive");
  }
}

ClassAdjacency build_class_adjacency(const LabeledGraph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");
  Matrix l(g.class_count(), 0.0);
  for (const Edge& e : g.edges()) {
    const ClassId a = g.label(e.u);
    const ClassId b = g.label(e.v);
    if (a == b) {
      l(a, a) += 2.0 * e.weight;
    } else {
      l(a, b) += e.weight;
      l(b, a) += e.weight;
    }
  }
  return ClassAdjacency(std::move(l));
}

NormalizedClassMatrix normalize(const ClassAdjacency& l) {
  const double total = l.entries().sum();
  if (!(total > 0.0)) throw std::invalid_argument("class adjacency is all zero");
  if (l.entries().nonzero_count() < 2) {
    throw std::invalid_argument("class adjacency has a single positive entry");
  }
  const std::size_t m = l.size();
  Matrix c(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) c(i, j) = l(i, j) / total;
  return NormalizedClassMatrix(std::move(c));
}

NormalizedClassMatrix class_matrix(const LabeledGraph& g) {
  return normalize(build_class_adjacency(g));
}

NormalizedClassMatrix rand_baseline(const NormalizedClassMatrix& c) {
  const std::vector<double> a = c.marginals();
  const std::size_t m = c.size();
  Matrix r(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r(i, j) = a[i] * a[j];
  if (r.nonzero_count() < 2) {
    throw std::invalid_argument("rand baseline is degenerate: a single nonzero marginal");
  }
  return NormalizedClassMatrix(std::move(r));
}

NormalizedClassMatrix add_homophilic_mass(const NormalizedClassMatrix& c, std::size_t i,
                                          double eps) {
  if (i >= c.size()) throw std::out_of_range("class index out of range");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  Matrix out = c.entries();
  const std::size_t m = c.size();
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) out(r, s) *= (1.0 - eps);
  out(i, i) += eps;
  return NormalizedClassMatrix(std::move(out));
}

double max_heterophilic_removal(const NormalizedClassMatrix& c, std::size_t i,
                                std::size_t j) {
  const double cij = c(i, j);
  // c_ij + c_ji <= 1, and equality means the matrix is [[0, .5], [.5, 0]],
  // for which any eps is admissible.
  if (cij >= 0.5) return std::numeric_limits<double>::infinity();
  return 2.0 * cij / (1.0 - 2.0 * cij);
}

NormalizedClassMatrix remove_heterophilic_mass(const NormalizedClassMatrix& c,
                                               std::size_t i, std::size_t j, double eps) {
  if (i >= c.size() || j >= c.size()) throw std::out_of_range("class index out of range");
  if (i == j) throw std::invalid_argument("heterophilic removal needs i != j");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double bound = 2.0 * (1.0 + eps) * c(i, j);
  if (eps > bound * (1.0 + kMatrixTolerance)) {
    throw std::invalid_argument("eps exceeds 2(1+eps)c_ij: entry would become negative");
  }
  Matrix out = c.entries();
  const std::size_t m = c.size();
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) out(r, s) *= (1.0 + eps);
  const double reduced = std::max(0.0, snap_to_zero(out(i, j) - eps / 2.0, 1.0 + eps));
  out(i, j) = reduced;
  out(j, i) = reduced;
  // The exact sum is 1; dividing by the computed one keeps rounding from
  // piling up when eps is large (c_ij close to 1/2).
  const double total = out.sum();
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) out(r, s) /= total;
  return NormalizedClassMatrix(std::move(out));
}

NormalizedClassMatrix pad_empty_class(const NormalizedClassMatrix& c) {
  const std::size_t m = c.size();
  Matrix out(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = c(i, j);
  return NormalizedClassMatrix(std::move(out));
}

void validate_permutation(std::span<const std::size_t> sigma, std::size_t m) {
  if (sigma.size() != m) throw std::invalid_argument("permutation has the wrong length");
  std::vector<bool> seen(m, false);
  for (std::size_t x : sigma) {
    if (x >= m || seen[x]) throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> sigma) {
  validate_permutation(sigma, sigma.size());
  std::vector<std::size_t> inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  return inv;
}

NormalizedClassMatrix permute_classes(const NormalizedClassMatrix& c,
                                      std::span<const std::size_t> sigma) {
  const std::size_t m = c.size();
  validate_permutation(sigma, m);
  Matrix out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(sigma[i], sigma[j]) = c(i, j);
  return NormalizedClassMatrix(std::move(out));
}

}  // namespace homophily
