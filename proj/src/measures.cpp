#include "homophily/measures.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace homophily {
namespace {

double sum_sqrt_diagonal(const NormalizedClassMatrix& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += std::sqrt(c(i, i));
  return s;
}

double sum_squares(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return s;
}

// Denominators closer to zero than this are treated as zero.
constexpr double kDenominatorFloor = 1e-14;

template <typename Fn>
MeasureValue guarded(Fn&& fn) {
  try {
    return MeasureValue::of(fn());
  } catch (const std::domain_error&) {
    return MeasureValue::undefined(UndefinedReason::degenerate_denominator);
  } catch (const std::invalid_argument&) {
    return MeasureValue::undefined(UndefinedReason::invalid_parameter);
  }
}

}  // namespace

std::string_view reason_code(UndefinedReason r) {
  switch (r) {
    case UndefinedReason::empty_class_degree: return "empty-class-degree";
    case UndefinedReason::single_class: return "single-class";
    case UndefinedReason::all_nodes_isolated: return "all-nodes-isolated";
    case UndefinedReason::no_edges: return "no-edges";
    case UndefinedReason::degenerate_class_matrix: return "degenerate-class-matrix";
    case UndefinedReason::degenerate_denominator: return "degenerate-denominator";
    case UndefinedReason::invalid_parameter: return "invalid-parameter";
  }
  return "unknown";
}

double MeasureValue::value() const {
  if (!value_) throw std::logic_error("measure value is undefined: " + std::string(reason_code(reason_)));
  return *value_;
}

double edge_homophily(const NormalizedClassMatrix& c) { return c.entries().trace(); }

double adjusted_homophily(const NormalizedClassMatrix& c) {
  const std::vector<double> a = c.marginals();
  const double expected = sum_squares(a);
  const double den = 1.0 - expected;
  if (std::abs(den) < kDenominatorFloor) {
    throw std::domain_error("adjusted homophily: a single class carries all edge mass");
  }
  return (c.entries().trace() - expected) / den;
}

double adjusted_homophily_from_degrees(double edge_fraction,
                                       std::span<const double> class_degrees,
                                       double total_weight) {
  if (!(total_weight > 0.0)) throw std::invalid_argument("total weight must be positive");
  const double two_w = 2.0 * total_weight;
  double expected = 0.0;
  for (double d : class_degrees) expected += (d * d) / (two_w * two_w);
  const double den = 1.0 - expected;
  if (std::abs(den) < kDenominatorFloor) {
    throw std::domain_error("adjusted homophily: a single class carries all edge mass");
  }
  return (edge_fraction - expected) / den;
}

double unbiased_homophily(const NormalizedClassMatrix& c) {
  const double s = sum_sqrt_diagonal(c);
  const double s2 = s * s;
  const double value = (s2 - 1.0) / (s2 + 1.0 - 2.0 * c.entries().trace());
  assert(std::abs(value - unbiased_homophily_pairwise(c)) < 1e-10);
  return value;
}

double unbiased_homophily_pairwise(const NormalizedClassMatrix& c) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double expected = std::sqrt(c(i, i) * c(j, j));
      num += expected - c(i, j);
      den += expected + c(i, j);
    }
  }
  return num / den;
}

double unbiased_homophily_alpha(const NormalizedClassMatrix& c, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return unbiased_homophily(c) + alpha * std::min(sum_sqrt_diagonal(c), 1.0);
}

double adjusted_nominal_assortativity(const NormalizedClassMatrix& c,
                                      std::span<const double> fractions) {
  const std::size_t m = c.size();
  if (fractions.size() != m) {
    throw std::invalid_argument("class fractions must have one entry per class");
  }
  for (double f : fractions) {
    if (!(f >= 0.0)) throw std::invalid_argument("class fractions must be non-negative");
  }
  if (std::abs(std::accumulate(fractions.begin(), fractions.end(), 0.0) - 1.0) > 1e-9) {
    throw std::invalid_argument("class fractions must sum to 1");
  }
  const std::vector<double> a = c.marginals();
  for (std::size_t i = 0; i < m; ++i) {
    if (fractions[i] == 0.0 && a[i] > 0.0) {
      throw std::invalid_argument("class with edge mass has zero node fraction");
    }
  }
  double diagonal = 0.0;
  double expected = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (fractions[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (fractions[j] == 0.0) continue;
      row += c(i, j) / (fractions[i] * fractions[j]);
    }
    diagonal += c(i, i) / (fractions[i] * fractions[i]);
    expected += row * row;
  }
  const double den = 1.0 - expected;
  if (std::abs(den) < kDenominatorFloor) {
    throw std::domain_error("adjusted nominal assortativity: zero denominator");
  }
  return (diagonal - expected) / den;
}

double discontinuous_reference(const NormalizedClassMatrix& c) {
  const double s = sum_sqrt_diagonal(c);
  if (s <= 1.0 + kValueTolerance) return s - 1.0;
  return c.entries().trace();
}

double edge_homophily(const LabeledGraph& g) {
  double same = 0.0;
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    total += e.weight;
    if (g.label(e.u) == g.label(e.v)) same += e.weight;
  }
  if (!(total > 0.0)) throw std::invalid_argument("graph has no edges");
  return same / total;
}

double node_homophily(const LabeledGraph& g) {
  std::vector<double> same(g.node_count(), 0.0);
  const std::vector<double> deg = degrees(g);
  for (const Edge& e : g.edges()) {
    if (g.label(e.u) != g.label(e.v)) continue;
    same[e.u] += e.weight;
    same[e.v] += e.weight;
  }
  double total = 0.0;
  std::size_t counted = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!(deg[v] > 0.0)) continue;
    total += same[v] / deg[v];
    ++counted;
  }
  if (counted == 0) throw std::domain_error("node homophily: every node is isolated");
  return total / static_cast<double>(counted);
}

MeasureValue class_homophily(const LabeledGraph& g) {
  const std::size_t m = g.class_count();
  if (m < 2) return MeasureValue::undefined(UndefinedReason::single_class);
  if (g.edge_count() == 0) return MeasureValue::undefined(UndefinedReason::no_edges);
  const ClassAggregates agg = aggregates(g);
  for (double d : agg.class_degrees) {
    if (!(d > 0.0)) return MeasureValue::undefined(UndefinedReason::empty_class_degree);
  }
  std::vector<double> intra(m, 0.0);
  for (const Edge& e : g.edges()) {
    const ClassId y = g.label(e.u);
    if (y == g.label(e.v)) intra[y] += 2.0 * e.weight;
  }
  const double n = static_cast<double>(g.node_count());
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double excess =
        intra[k] / agg.class_degrees[k] - static_cast<double>(agg.class_sizes[k]) / n;
    total += std::max(excess, 0.0);
  }
  return MeasureValue::of(total / static_cast<double>(m - 1));
}

// ---------------------------------------------------------------------------

std::string_view property_name(Property p) {
  switch (p) {
    case Property::continuity: return "continuity";
    case Property::maximal_agreement: return "maximal-agreement";
    case Property::minimal_agreement: return "minimal-agreement";
    case Property::constant_baseline: return "constant-baseline";
    case Property::monotonicity: return "monotonicity";
    case Property::empty_class_tolerance: return "empty-class-tolerance";
    case Property::class_symmetry: return "class-symmetry";
  }
  return "unknown";
}

std::string_view cell_name(Cell c) {
  switch (c) {
    case Cell::pass: return "pass";
    case Cell::exempt_single_diagonal: return "exempt-on-single-diagonal";
    case Cell::fail: return "fail";
    case Cell::not_applicable: return "n/a";
  }
  return "unknown";
}

Measure::Measure(MeasureDescriptor descriptor, MatrixFn on_matrix)
    : descriptor_(std::move(descriptor)), on_matrix_(std::move(on_matrix)) {
  descriptor_.input_kind = InputKind::matrix;
}

Measure::Measure(MeasureDescriptor descriptor, GraphFn on_graph)
    : descriptor_(std::move(descriptor)), on_graph_(std::move(on_graph)) {
  descriptor_.input_kind = InputKind::graph;
}

Measure::Measure(MeasureDescriptor descriptor, MatrixFn on_matrix, GraphFn on_graph)
    : descriptor_(std::move(descriptor)),
      on_matrix_(std::move(on_matrix)),
      on_graph_(std::move(on_graph)) {
  descriptor_.input_kind = InputKind::matrix;
}

MeasureValue Measure::evaluate(const LabeledGraph& g) const {
  if (on_graph_) return on_graph_(g);
  if (g.edge_count() == 0) return MeasureValue::undefined(UndefinedReason::no_edges);
  const ClassAdjacency l = build_class_adjacency(g);
  if (l.entries().nonzero_count() < 2) {
    return MeasureValue::undefined(UndefinedReason::degenerate_class_matrix);
  }
  return on_matrix_(normalize(l));
}

MeasureValue Measure::evaluate(const NormalizedClassMatrix& c) const {
  if (!on_matrix_) {
    throw std::logic_error("measure '" + descriptor_.name + "' is not edge-wise");
  }
  return on_matrix_(c);
}

namespace {

constexpr Cell P = Cell::pass;
constexpr Cell F = Cell::fail;
constexpr Cell E = Cell::exempt_single_diagonal;
constexpr Cell NA = Cell::not_applicable;

Measure edge_measure() {
  MeasureDescriptor d;
  d.name = "edge";
  d.expected_profile = PropertyProfile{P, P, P, F, P, P, P};
  d.r_max = 1.0;
  d.r_min = 0.0;
  return Measure(std::move(d), Measure::MatrixFn([](const NormalizedClassMatrix& c) {
                   return MeasureValue::of(edge_homophily(c));
                 }));
}

Measure node_measure() {
  MeasureDescriptor d;
  d.name = "node";
  d.expected_profile = PropertyProfile{NA, P, P, F, P, P, P};
  d.r_max = 1.0;
  d.r_min = 0.0;
  return Measure(std::move(d), Measure::GraphFn([](const LabeledGraph& g) {
                   try {
                     return MeasureValue::of(node_homophily(g));
                   } catch (const std::domain_error&) {
                     return MeasureValue::undefined(UndefinedReason::all_nodes_isolated);
                   }
                 }));
}

Measure class_measure() {
  MeasureDescriptor d;
  d.name = "class";
  d.expected_profile = PropertyProfile{NA, P, F, F, F, F, P};
  d.r_max = 1.0;
  d.r_min = 0.0;
  return Measure(std::move(d), Measure::GraphFn(class_homophily));
}

Measure adjusted_measure() {
  MeasureDescriptor d;
  d.name = "adjusted";
  d.expected_profile = PropertyProfile{P, P, F, P, F, P, P};
  d.r_max = 1.0;
  d.r_base = 0.0;
  return Measure(std::move(d), Measure::MatrixFn([](const NormalizedClassMatrix& c) {
                   return guarded([&] { return adjusted_homophily(c); });
                 }));
}

Measure unbiased_measure() {
  MeasureDescriptor d;
  d.name = "unbiased";
  d.expected_profile = PropertyProfile{P, P, E, P, E, P, P};
  d.r_max = 1.0;
  d.r_base = 0.0;
  d.r_min = -1.0;
  d.single_diagonal_exemption = true;
  return Measure(std::move(d), Measure::MatrixFn([](const NormalizedClassMatrix& c) {
                   return MeasureValue::of(unbiased_homophily(c));
                 }));
}

std::string alpha_name(double alpha) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, alpha);
  return "unbiased-alpha:" + std::string(buf, end);
}

Measure unbiased_alpha_measure(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be a positive number");
  }
  MeasureDescriptor d;
  d.name = alpha_name(alpha);
  d.alpha = alpha;
  d.expected_profile = PropertyProfile{P, P, P, P, P, P, P};
  d.r_max = 1.0 + alpha;
  d.r_base = alpha;
  d.r_min = -1.0;
  return Measure(std::move(d), Measure::MatrixFn([alpha](const NormalizedClassMatrix& c) {
                   return MeasureValue::of(unbiased_homophily_alpha(c, alpha));
                 }));
}

Measure adjusted_nominal_measure(std::vector<double> fractions) {
  MeasureDescriptor d;
  d.name = "adj-nominal";
  d.class_fractions = std::move(fractions);
  auto on_matrix = [f = d.class_fractions](const NormalizedClassMatrix& c) {
    std::vector<double> used = f;
    if (used.empty()) used.assign(c.size(), 1.0 / static_cast<double>(c.size()));
    return guarded([&] { return adjusted_nominal_assortativity(c, used); });
  };
  auto on_graph = [](const LabeledGraph& g) {
    if (g.edge_count() == 0) return MeasureValue::undefined(UndefinedReason::no_edges);
    const ClassAdjacency l = build_class_adjacency(g);
    if (l.entries().nonzero_count() < 2) {
      return MeasureValue::undefined(UndefinedReason::degenerate_class_matrix);
    }
    const ClassAggregates agg = aggregates(g);
    std::vector<double> f(g.class_count());
    for (std::size_t k = 0; k < f.size(); ++k) {
      f[k] = static_cast<double>(agg.class_sizes[k]) / static_cast<double>(g.node_count());
    }
    const NormalizedClassMatrix c = normalize(l);
    return guarded([&] { return adjusted_nominal_assortativity(c, f); });
  };
  return Measure(std::move(d), Measure::MatrixFn(on_matrix), Measure::GraphFn(on_graph));
}

Measure discontinuous_measure() {
  MeasureDescriptor d;
  d.name = "discontinuous-ref";
  d.expected_profile = PropertyProfile{F, P, P, P, P, P, P};
  d.r_max = 1.0;
  d.r_base = 0.0;
  d.r_min = -1.0;
  return Measure(std::move(d), Measure::MatrixFn([](const NormalizedClassMatrix& c) {
                   return MeasureValue::of(discontinuous_reference(c));
                 }));
}

}  // namespace

Measure make_measure(std::string_view name) {
  if (name == "edge") return edge_measure();
  if (name == "node") return node_measure();
  if (name == "class") return class_measure();
  if (name == "adjusted") return adjusted_measure();
  if (name == "unbiased") return unbiased_measure();
  if (name == "adj-nominal") return adjusted_nominal_measure({});
  if (name == "discontinuous-ref") return discontinuous_measure();
  constexpr std::string_view alpha_prefix = "unbiased-alpha";
  if (name == alpha_prefix) return unbiased_alpha_measure(kDefaultAlpha);
  if (name.starts_with(alpha_prefix) && name.size() > alpha_prefix.size() &&
      name[alpha_prefix.size()] == ':') {
    const std::string_view text = name.substr(alpha_prefix.size() + 1);
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), alpha);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw std::invalid_argument("cannot parse alpha in measure name '" + std::string(name) + "'");
    }
    return unbiased_alpha_measure(alpha);
  }
  throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

std::vector<Measure> property_table_catalog(double alpha) {
  std::vector<Measure> out;
  out.push_back(edge_measure());
  out.push_back(node_measure());
  out.push_back(class_measure());
  out.push_back(adjusted_measure());
  out.push_back(unbiased_alpha_measure(alpha));
  out.push_back(unbiased_measure());
  return out;
}

std::vector<std::string> known_measure_names() {
  return {"edge",     "node",        "class",           "adjusted",
          "unbiased", alpha_name(kDefaultAlpha), "adj-nominal", "discontinuous-ref"};
}

}  // namespace homophily
