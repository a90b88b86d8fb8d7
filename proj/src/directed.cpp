#include "homophily/directed.hpp"

#include <algorithm>
#include <cmath>


namespace homophily {
namespace {

constexpr double kTolerance = 1e-12;

ExactMatrix exact(std::initializer_list<std::initializer_list<Rational>> rows) {
  return ExactMatrix(rows);
}

bool zero_diagonal(const ExactMatrix& m) { return m.trace() == Rational(0); }

}  // namespace

DirectedClassMatrix::DirectedClassMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0) throw std::invalid_argument("directed class matrix: empty matrix");
  for (double x : entries_.data()) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::invalid_argument("directed class matrix: entries must be finite and >= 0");
    }
  }
  if (std::abs(entries_.sum() - 1.0) > kTolerance) {
    throw std::invalid_argument("directed class matrix: entries must sum to 1");
  }
  if (entries_.nonzero_count() < 2) {
    throw std::invalid_argument("directed class matrix: at least two entries must be positive");
  }
}

DirectedClassMatrix DirectedClassMatrix::from_counts(const Matrix& counts) {
  const double total = counts.sum();
  if (!(total > 0.0)) throw std::invalid_argument("directed counts are all zero");
  Matrix c(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t j = 0; j < counts.size(); ++j) c(i, j) = counts(i, j) / total;
  return DirectedClassMatrix(std::move(c));
}

DirectedClassMatrix directed_rand(const DirectedClassMatrix& c) {
  return DirectedClassMatrix(outer_marginals(c.entries()));
}

DirectedClassMatrix remove_heterophilic_directed(const DirectedClassMatrix& c, std::size_t i,
                                                 std::size_t j, double eps) {
  if (i >= c.size() || j >= c.size()) throw std::out_of_range("class index out of range");
  if (i == j) throw std::invalid_argument("heterophilic removal needs i != j");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  // An eps computed as the exact bound may land one ulp past it.
  if (eps > (1.0 + eps) * c(i, j) * (1.0 + kTolerance)) {
    throw std::invalid_argument("eps exceeds (1+eps)c_ij: entry would become negative");
  }
  Matrix out(c.size(), 0.0);
  for (std::size_t r = 0; r < c.size(); ++r)
    for (std::size_t s = 0; s < c.size(); ++s) out(r, s) = (1.0 + eps) * c(r, s);
  out(i, j) -= eps;
  if (out(i, j) <= 1e-15 * (1.0 + eps)) out(i, j) = 0.0;
  return DirectedClassMatrix(std::move(out));
}

DirectedClassMatrix partially_randomize(const DirectedClassMatrix& c, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0, 1]");
  const Matrix r = outer_marginals(c.entries());
  Matrix out(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = (1.0 - eps) * c(i, j) + eps * r(i, j);
  return DirectedClassMatrix(std::move(out));
}

double directed_edge_homophily(const DirectedClassMatrix& c) { return c.entries().trace(); }

Matrix to_double(const ExactMatrix& m) {
  Matrix out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = boost::rational_cast<double>(m(i, j));
  return out;
}

bool ContradictionWitness::all_hold() const {
  return !facts.empty() &&
         std::ranges::all_of(facts, [](const WitnessFact& f) { return f.holds; });
}

ContradictionWitness witness_const_vs_min() {
  const Rational q(1, 4), o(0);
  const ExactMatrix k = exact({{o, o, q, q}, {o, o, q, q}, {o, o, o, o}, {o, o, o, o}});
  const ExactMatrix l = exact({{q, q, o, o}, {q, q, o, o}, {o, o, o, o}, {o, o, o, o}});
  ContradictionWitness w;
  w.name = "const-vs-min";
  w.matrices = {{"K", k}, {"L", l}};
  w.facts = {
      {"K sums to 1", k.sum() == Rational(1)},
      {"L sums to 1", l.sum() == Rational(1)},
      {"K = rand(K)", outer_marginals(k) == k},
      {"L = rand(L)", outer_marginals(l) == l},
      {"diagonal of K is zero (all edges heterophilic)", zero_diagonal(k)},
      {"diagonal of L is nonzero", !zero_diagonal(l)},
  };
  w.consequence =
      "a measure with a constant baseline gives h(K) = h(L) = R_base, but minimal agreement "
      "needs h(K) = R_min < h(L)";
  return w;
}

ContradictionWitness witness_const_vs_hetero() {
  const Rational n(1, 9), q(1, 4), o(0);
  const ExactMatrix t = exact({{n, n, o, n}, {n, n, o, n}, {n, n, o, n}, {o, o, o, o}});
  const ExactMatrix l = exact({{q, q, o, o}, {q, q, o, o}, {o, o, o, o}, {o, o, o, o}});
  // Entries of T deleted on the way to L (0-based indices).
  const std::vector<std::pair<std::size_t, std::size_t>> deletions = {
      {0, 3}, {1, 3}, {2, 0}, {2, 1}, {2, 3}};

  ExactMatrix current = t;
  bool steps_valid = true;
  for (const auto& [i, j] : deletions) {
    const Rational eps = max_directed_removal(current, i, j);
    current = remove_directed_entry(current, i, j, eps);
    steps_valid = steps_valid && current(i, j) == Rational(0) && current.sum() == Rational(1);
  }
  const bool all_off_diagonal =
      std::ranges::all_of(deletions, [](const auto& p) { return p.first != p.second; });
  const std::vector<Rational> a = t.row_sums(), b = t.column_sums();
  const Rational third(1, 3);

  ContradictionWitness w;
  w.name = "const-vs-hetero";
  w.matrices = {{"T", t}, {"L", l}};
  w.facts = {
      {"T sums to 1", t.sum() == Rational(1)},
      {"T has row sums (1/3, 1/3, 1/3, 0)",
       a == std::vector<Rational>{third, third, third, o}},
      {"T has column sums (1/3, 1/3, 0, 1/3)",
       b == std::vector<Rational>{third, third, o, third}},
      {"T = rand(T)", outer_marginals(t) == t},
      {"L = rand(L)", outer_marginals(l) == l},
      {"every deleted entry is off-diagonal (heterophilic)", all_off_diagonal},
      {"each deletion is an admissible (1+eps)C - eps E_ij step zeroing c_ij", steps_valid},
      {"deleting (1,4), (2,4), (3,1), (3,2), (3,4) from T leaves exactly L", current == l},
  };
  w.consequence =
      "a measure with a constant baseline gives h(T) = h(L) = R_base, but hetero-monotonicity "
      "needs h(T) < h(L)";
  return w;
}

RandomizationReport check_randomization_monotonicity(const DirectedMeasure& h,
                                                     const DirectedClassMatrix& c,
                                                     const std::vector<double>& eps_grid,
                                                     std::optional<double> r_base,
                                                     double tolerance) {
  if (!std::ranges::is_sorted(eps_grid)) throw std::invalid_argument("eps grid must be sorted");
  for (double e : eps_grid) {
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  }
  RandomizationReport report;
  report.initial = h(c);
  report.baseline_from_input = !r_base.has_value();
  report.r_base = r_base ? *r_base : h(directed_rand(c));
  if (report.baseline_from_input) {
    report.note = "no constant baseline supplied; using h(rand(C)) for this input";
  }
  const double h0 = report.initial;
  const double base = report.r_base;
  report.pass = true;
  double previous = h0;
  for (double eps : eps_grid) {
    RandomizationStep step;
    step.eps = eps;
    step.value = h(partially_randomize(c, eps));
    const double v = step.value;
    if (h0 < base - tolerance) {
      step.ok = h0 < v && v <= base + tolerance && v >= previous - tolerance;
    } else if (h0 > base + tolerance) {
      step.ok = h0 > v && v >= base - tolerance && v <= previous + tolerance;
    } else {
      step.ok = std::abs(v - base) <= tolerance;
    }
    report.pass = report.pass && step.ok;
    previous = v;
    report.steps.push_back(step);
  }
  return report;
}

}  // namespace homophily
