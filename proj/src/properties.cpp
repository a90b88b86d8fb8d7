#include "homophily/properties.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace homophily {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Upper bound on resampling loops; hitting it means the sampler
// configuration cannot produce the requested kind of input.
constexpr int kMaxDraws = 10000;

double value_or_nan(const MeasureValue& v) { return v.defined() ? *v.get() : kNaN; }

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool same_graph(const LabeledGraph& a, const LabeledGraph& b) {
  return a.class_count() == b.class_count() &&
         std::ranges::equal(a.labels(), b.labels()) && std::ranges::equal(a.edges(), b.edges());
}

bool has_off_diagonal(const NormalizedClassMatrix& c) {
  return c.entries().nonzero_count() > c.entries().nonzero_diagonal_count();
}

bool has_heterophilic_edge(const LabeledGraph& g) {
  return std::ranges::any_of(g.edges(),
                             [&](const Edge& e) { return g.label(e.u) != g.label(e.v); });
}

bool has_homophilic_edge(const LabeledGraph& g) {
  return std::ranges::any_of(g.edges(),
                             [&](const Edge& e) { return g.label(e.u) == g.label(e.v); });
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t m) {
  std::vector<std::size_t> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  for (std::size_t k = m; k > 1; --k) std::swap(sigma[k - 1], sigma[rng.uniform_int(0, k - 1)]);
  return sigma;
}

/// Strictly positive uniform draw on (0, 1).
double open_unit(Rng& rng) {
  for (;;) {
    const double u = rng.uniform();
    if (u > 0.0) return u;
  }
}

template <typename Draw, typename Accept>
auto draw_until(Draw&& draw, Accept&& accept) {
  for (int i = 0; i < kMaxDraws; ++i) {
    auto x = draw();
    if (accept(x)) return x;
  }
  throw std::runtime_error("sampler could not produce a suitable input");
}

// ---------------------------------------------------------------------------
// Trials

/// Everything one trial looked at.
struct TrialData {
  std::vector<NormalizedClassMatrix> matrices;
  std::vector<LabeledGraph> graphs;
  std::vector<double> values;
  std::string note;
  /// The measure's single-diagonal exemption covers this input.
  bool exemptable{false};
};

bool single_diagonal(const NormalizedClassMatrix& c) {
  return c.entries().nonzero_diagonal_count() <= 1;
}

NormalizedClassMatrix perturb(const NormalizedClassMatrix& c, const Matrix& direction,
                              double delta) {
  const std::size_t m = c.size();
  Matrix out(m, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      out(i, j) = c(i, j) * (1.0 + delta * direction(i, j));
      total += out(i, j);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) /= total;
  // Division can leave asymmetry in the last bit.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out(j, i) = out(i, j);
  return NormalizedClassMatrix(std::move(out));
}

double max_norm_distance(const NormalizedClassMatrix& a, const NormalizedClassMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

LabeledGraph relabel(const LabeledGraph& g, std::span<const std::size_t> sigma) {
  std::vector<ClassId> labels(g.labels().begin(), g.labels().end());
  for (auto& y : labels) y = sigma[y];
  return LabeledGraph(std::move(labels), g.class_count(),
                      std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

TrialData matrix_trial(const Measure& h, Check check, Rng& rng, const CheckOptions& opts) {
  const MatrixSampler& s = opts.matrices;
  TrialData t;
  auto eval = [&](const NormalizedClassMatrix& c) { return value_or_nan(h.evaluate(c)); };
  switch (check) {
    case Check::maximal_agreement: {
      auto extreme = s.sample_fully_homophilic(rng);
      auto interior = draw_until([&] { return s.sample(rng); },
                                 [](const auto& c) { return has_off_diagonal(c); });
      t.values = {eval(extreme), eval(interior)};
      t.matrices = {std::move(extreme), std::move(interior)};
      break;
    }
    case Check::minimal_agreement: {
      auto extreme = s.sample_fully_heterophilic(rng);
      auto interior = draw_until([&] { return s.sample(rng); },
                                 [](const auto& c) { return c.entries().nonzero_diagonal_count() > 0; });
      t.values = {eval(extreme), eval(interior)};
      t.exemptable = single_diagonal(interior);
      t.matrices = {std::move(extreme), std::move(interior)};
      break;
    }
    case Check::constant_baseline: {
      auto c = s.sample(rng);
      auto r = rand_baseline(c);
      t.values = {eval(r)};
      t.matrices = {std::move(c), std::move(r)};
      break;
    }
    case Check::homo_monotonicity: {
      auto c = draw_until([&] { return s.sample(rng); },
                          [](const auto& x) { return has_off_diagonal(x); });
      const std::size_t i = rng.uniform_int(0, c.size() - 1);
      const double eps = open_unit(rng);
      auto after = add_homophilic_mass(c, i, eps);
      t.note = fmt::format("class {}, eps {:.17g}", i, eps);
      t.values = {eval(c), eval(after)};
      t.exemptable = single_diagonal(c);
      t.matrices = {std::move(c), std::move(after)};
      break;
    }
    case Check::hetero_monotonicity: {
      auto c = draw_until([&] { return s.sample(rng); }, [](const auto& x) {
        return x.entries().nonzero_diagonal_count() > 0 && has_off_diagonal(x);
      });
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
          if (c(i, j) > 0.0) pairs.emplace_back(i, j);
      const auto [i, j] = pairs[rng.uniform_int(0, pairs.size() - 1)];
      const double eps = open_unit(rng) * max_heterophilic_removal(c, i, j);
      auto after = remove_heterophilic_mass(c, i, j, eps);
      t.note = fmt::format("classes ({}, {}), eps {:.17g}", i, j, eps);
      t.values = {eval(c), eval(after)};
      t.exemptable = single_diagonal(c);
      t.matrices = {std::move(c), std::move(after)};
      break;
    }
    case Check::empty_class_tolerance: {
      auto c = s.sample(rng);
      auto padded = pad_empty_class(c);
      t.values = {eval(c), eval(padded)};
      t.matrices = {std::move(c), std::move(padded)};
      break;
    }
    case Check::class_symmetry: {
      auto c = s.sample(rng);
      const auto sigma = random_permutation(rng, c.size());
      auto permuted = permute_classes(c, sigma);
      t.values = {eval(c), eval(permuted)};
      t.matrices = {std::move(c), std::move(permuted)};
      break;
    }
    case Check::continuity: {
      auto c = s.sample(rng);
      Matrix direction(c.size(), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i; j < c.size(); ++j) {
          direction(i, j) = rng.uniform(-1.0, 1.0);
          direction(j, i) = direction(i, j);
        }
      auto near = perturb(c, direction, opts.continuity_delta);
      auto nearer = perturb(c, direction, opts.continuity_delta / 100.0);
      t.values = {eval(c), eval(near), eval(nearer)};
      t.matrices = {std::move(c), std::move(near), std::move(nearer)};
      break;
    }
  }
  return t;
}

TrialData graph_trial(const Measure& h, Check check, Rng& rng, const CheckOptions& opts) {
  const GraphSampler& s = opts.graphs;
  TrialData t;
  auto eval = [&](const LabeledGraph& g) { return value_or_nan(h.evaluate(g)); };
  switch (check) {
    case Check::maximal_agreement: {
      auto extreme = s.sample_fully_homophilic(rng);
      auto interior = draw_until([&] { return s.sample(rng); }, has_heterophilic_edge);
      t.values = {eval(extreme), eval(interior)};
      t.graphs = {std::move(extreme), std::move(interior)};
      break;
    }
    case Check::minimal_agreement: {
      auto extreme = s.sample_fully_heterophilic(rng);
      auto interior = draw_until([&] { return s.sample(rng); }, has_homophilic_edge);
      t.values = {eval(extreme), eval(interior)};
      t.graphs = {std::move(extreme), std::move(interior)};
      break;
    }
    case Check::constant_baseline: {
      auto g = s.sample_label_independent(rng);
      t.values = {eval(g)};
      t.graphs = {std::move(g)};
      break;
    }
    case Check::homo_monotonicity: {
      auto g = s.sample(rng);
      std::vector<std::vector<NodeId>> members(g.class_count());
      for (NodeId v = 0; v < g.node_count(); ++v) members[g.label(v)].push_back(v);
      std::vector<ClassId> eligible;
      for (ClassId k = 0; k < members.size(); ++k)
        if (members[k].size() >= 2) eligible.push_back(k);
      if (eligible.empty()) throw std::logic_error("graph sampler produced no class with two nodes");
      const auto& pool = members[eligible[rng.uniform_int(0, eligible.size() - 1)]];
      const std::size_t a = rng.uniform_int(0, pool.size() - 1);
      std::size_t b = rng.uniform_int(0, pool.size() - 2);
      if (b >= a) ++b;
      std::vector<Edge> edges(g.edges().begin(), g.edges().end());
      edges.push_back({pool[a], pool[b], 1.0});
      LabeledGraph after(std::vector<ClassId>(g.labels().begin(), g.labels().end()),
                         g.class_count(), std::move(edges));
      t.note = fmt::format("added edge ({}, {})", pool[a], pool[b]);
      t.values = {eval(g), eval(after)};
      t.graphs = {std::move(g), std::move(after)};
      break;
    }
    case Check::hetero_monotonicity: {
      auto g = draw_until([&] { return s.sample(rng); }, has_heterophilic_edge);
      std::vector<std::size_t> hetero;
      for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const Edge& e = g.edges()[k];
        if (g.label(e.u) != g.label(e.v)) hetero.push_back(k);
      }
      const std::size_t drop = hetero[rng.uniform_int(0, hetero.size() - 1)];
      std::vector<Edge> edges(g.edges().begin(), g.edges().end());
      t.note = fmt::format("deleted edge ({}, {})", edges[drop].u, edges[drop].v);
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(drop));
      LabeledGraph after(std::vector<ClassId>(g.labels().begin(), g.labels().end()),
                         g.class_count(), std::move(edges));
      t.values = {eval(g), eval(after)};
      t.graphs = {std::move(g), std::move(after)};
      break;
    }
    case Check::empty_class_tolerance: {
      auto g = s.sample(rng);
      auto padded = g.with_class_count(g.class_count() + 1);
      t.values = {eval(g), eval(padded)};
      t.graphs = {std::move(g), std::move(padded)};
      break;
    }
    case Check::class_symmetry: {
      auto g = s.sample(rng);
      const auto sigma = random_permutation(rng, g.class_count());
      auto permuted = relabel(g, sigma);
      t.values = {eval(g), eval(permuted)};
      t.graphs = {std::move(g), std::move(permuted)};
      break;
    }
    case Check::continuity:
      throw std::logic_error("continuity is not defined for graph-level measures");
  }
  return t;
}

TrialData run_trial(const Measure& h, Check check, std::uint64_t seed, const CheckOptions& opts) {
  Rng rng(seed);
  return h.is_matrix_level() ? matrix_trial(h, check, rng, opts)
                             : graph_trial(h, check, rng, opts);
}

// ---------------------------------------------------------------------------
// Pinned witnesses

NormalizedClassMatrix uniform_heterophilic(std::size_t m) {
  Matrix x(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) x(i, j) = 1.0 / static_cast<double>(m * (m - 1));
  return NormalizedClassMatrix(std::move(x));
}

NormalizedClassMatrix outer(std::vector<double> a) {
  Matrix x(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) x(i, j) = a[i] * a[j];
  return NormalizedClassMatrix(std::move(x));
}

NormalizedClassMatrix single_diagonal_witness() {
  return NormalizedClassMatrix(Matrix{{0.2, 0.4}, {0.4, 0.0}});
}

NormalizedClassMatrix four_class_witness() {
  return normalize(
      ClassAdjacency(Matrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 8}, {0, 0, 8, 2}}));
}

LabeledGraph complete_graph(std::vector<ClassId> labels, std::size_t m) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < labels.size(); ++u)
    for (NodeId v = u + 1; v < labels.size(); ++v) edges.push_back({u, v, 1.0});
  return LabeledGraph(std::move(labels), m, std::move(edges));
}

/// Complete graph with unit weights and self-loops of weight 1/2: its class
/// matrix is the outer product of the class fractions.
LabeledGraph uniform_label_independent(std::vector<ClassId> labels, std::size_t m) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < labels.size(); ++u) {
    edges.push_back({u, u, 0.5});
    for (NodeId v = u + 1; v < labels.size(); ++v) edges.push_back({u, v, 1.0});
  }
  return LabeledGraph(std::move(labels), m, std::move(edges));
}

/// v1 (class 0) and v2 (class 1) are adjacent and have no same-class
/// neighbours; deleting their edge leaves every per-node fraction unchanged.
LabeledGraph isolated_pair_witness() {
  return LabeledGraph({0, 1, 1, 0, 1, 0}, 2,
                      {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}});
}

struct Pinned {
  std::string name;
  TrialData data;
};

std::vector<Pinned> pinned_witnesses(const Measure& h, Check check, const CheckOptions& opts) {
  std::vector<Pinned> out;
  if (h.is_matrix_level()) {
    auto eval = [&](const NormalizedClassMatrix& c) { return value_or_nan(h.evaluate(c)); };
    auto add = [&](std::string name, std::vector<NormalizedClassMatrix> ms, bool exemptable) {
      TrialData t;
      for (const auto& c : ms) t.values.push_back(eval(c));
      t.matrices = std::move(ms);
      t.exemptable = exemptable;
      out.push_back({std::move(name), std::move(t)});
    };
    switch (check) {
      case Check::maximal_agreement:
        add("balanced-homophilic", {NormalizedClassMatrix(Matrix{{0.5, 0}, {0, 0.5}}),
                                    NormalizedClassMatrix(Matrix{{0.4, 0.1}, {0.1, 0.4}})},
            false);
        add("skewed-homophilic", {NormalizedClassMatrix(Matrix{{0.9, 0}, {0, 0.1}}),
                                  NormalizedClassMatrix(Matrix{{0.9, 0.02}, {0.02, 0.06}})},
            false);
        break;
      case Check::minimal_agreement:
        add("complete-3-distinct-labels", {uniform_heterophilic(3), single_diagonal_witness()},
            true);
        add("complete-4-distinct-labels", {uniform_heterophilic(4), single_diagonal_witness()},
            true);
        break;
      case Check::constant_baseline: {
        auto c1 = NormalizedClassMatrix(Matrix{{0.0, 0.5}, {0.5, 0.0}});
        auto c2 = NormalizedClassMatrix(Matrix{{0.9608, 0.0196}, {0.0196, 0.0}});
        add("random-50-50", {c1, outer({0.5, 0.5})}, false);
        out.back().data.values.erase(out.back().data.values.begin());
        add("random-98-2", {c2, outer({0.98, 0.02})}, false);
        out.back().data.values.erase(out.back().data.values.begin());
        break;
      }
      case Check::homo_monotonicity: {
        const auto c = single_diagonal_witness();
        add("single-diagonal-grow", {c, add_homophilic_mass(c, 0, 0.5)}, true);
        break;
      }
      case Check::hetero_monotonicity: {
        const auto f = four_class_witness();
        add("four-class-edge-deletion", {f, remove_heterophilic_mass(f, 0, 1, 0.1)}, false);
        const auto c = single_diagonal_witness();
        add("single-diagonal-shrink",
            {c, remove_heterophilic_mass(c, 0, 1, 0.5 * max_heterophilic_removal(c, 0, 1))}, true);
        break;
      }
      case Check::empty_class_tolerance: {
        const auto f = four_class_witness();
        add("four-class-padded", {f, pad_empty_class(f)}, false);
        add("four-class-padded-twice", {f, pad_empty_class(pad_empty_class(f))}, false);
        break;
      }
      case Check::class_symmetry: {
        const auto c = NormalizedClassMatrix(
            Matrix{{0.3, 0.05, 0.05}, {0.05, 0.2, 0.1}, {0.05, 0.1, 0.1}});
        const std::vector<std::size_t> reverse = {2, 1, 0};
        add("distinct-diagonal-reversed", {c, permute_classes(c, reverse)}, false);
        break;
      }
      case Check::continuity: {
        auto l = [](double e) {
          return NormalizedClassMatrix(Matrix{{0.25 + e, 0.25 - e}, {0.25 - e, 0.25 + e}});
        };
        const double d = opts.continuity_delta * 10.0;
        add("balanced-two-class-surface", {l(0.0), l(d), l(d / 100.0)}, false);
        break;
      }
    }
  } else {
    auto eval = [&](const LabeledGraph& g) { return value_or_nan(h.evaluate(g)); };
    auto add = [&](std::string name, std::vector<LabeledGraph> gs) {
      TrialData t;
      for (const auto& g : gs) t.values.push_back(eval(g));
      t.graphs = std::move(gs);
      out.push_back({std::move(name), std::move(t)});
    };
    switch (check) {
      case Check::maximal_agreement:
        add("two-homophilic-pairs",
            {LabeledGraph({0, 0, 1, 1}, 2, {{0, 1}, {2, 3}}),
             LabeledGraph({0, 0, 1, 1}, 2, {{0, 1}, {2, 3}, {1, 2}})});
        break;
      case Check::minimal_agreement:
        add("complete-3-vs-pairs", {complete_graph({0, 1, 2}, 3),
                                    complete_graph({0, 0, 1, 1, 2, 2}, 3)});
        add("complete-4-vs-pairs", {complete_graph({0, 1, 2, 3}, 4),
                                    complete_graph({0, 0, 1, 1, 2, 2}, 3)});
        break;
      case Check::constant_baseline: {
        std::vector<ClassId> even(50, 0), skew(50, 0);
        for (std::size_t v = 25; v < 50; ++v) even[v] = 1;
        skew[49] = 1;
        add("label-independent-25-25", {uniform_label_independent(even, 2)});
        add("label-independent-49-1", {uniform_label_independent(skew, 2)});
        break;
      }
      case Check::homo_monotonicity:
        break;
      case Check::hetero_monotonicity: {
        const LabeledGraph g = isolated_pair_witness();
        std::vector<Edge> edges(g.edges().begin() + 1, g.edges().end());
        add("isolated-heterophilic-pair",
            {g, LabeledGraph(std::vector<ClassId>(g.labels().begin(), g.labels().end()), 2,
                             std::move(edges))});
        break;
      }
      case Check::empty_class_tolerance: {
        const LabeledGraph g = complete_graph({0, 0, 1, 1, 2, 2}, 3);
        add("complete-pairs-dummy-class", {g, g.with_class_count(4)});
        break;
      }
      case Check::class_symmetry: {
        const LabeledGraph g({0, 0, 1}, 2, {{0, 1}, {1, 2}});
        const std::vector<std::size_t> swap = {1, 0};
        add("path-relabelled", {g, relabel(g, swap)});
        break;
      }
      case Check::continuity:
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation of trial data

std::string describe_values(std::span<const double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ", ";
    s += std::isnan(v) ? std::string("undefined") : fmt::format("{:.17g}", v);
  }
  return s;
}

class Evaluator {
 public:
  Evaluator(const Measure& h, Check check, const CheckOptions& opts)
      : h_(h), check_(check), opts_(opts) {
    report_.measure = h.name();
    report_.check = check;
  }

  void consume(const TrialData& t, std::optional<std::uint64_t> seed, const std::string& witness) {
    ++report_.trials;
    switch (check_) {
      case Check::maximal_agreement:
      case Check::minimal_agreement: agreement(t, seed, witness); break;
      case Check::constant_baseline: baseline(t, seed, witness); break;
      case Check::homo_monotonicity:
      case Check::hetero_monotonicity: increase(t, seed, witness); break;
      case Check::empty_class_tolerance:
      case Check::class_symmetry: equality(t, seed, witness); break;
      case Check::continuity: continuity(t, seed, witness); break;
    }
  }

  PropertyReport finish() {
    report_.verdict = report_.violations.empty() ? Verdict::pass : Verdict::fail;
    if (reference_) report_.empirical_constant = reference_value_;
    if (check_ == Check::continuity) {
      report_.note = fmt::format(
          "heuristic probe: relative perturbation {:g}, Lipschitz factor {:g}; a pass is "
          "evidence, not proof",
          opts_.continuity_delta, opts_.continuity_factor);
    }
    return std::move(report_);
  }

 private:
  Violation make(const TrialData& t, std::optional<std::uint64_t> seed, const std::string& witness,
                 std::string description, bool with_reference) const {
    Violation v;
    v.trial_seed = seed;
    v.witness = witness;
    if (with_reference && reference_) {
      if (reference_->matrices.size() > 0) v.matrices.push_back(reference_->matrices[0]);
      if (reference_->graphs.size() > 0) v.graphs.push_back(reference_->graphs[0]);
      v.values.push_back(reference_value_);
    }
    v.matrices.insert(v.matrices.end(), t.matrices.begin(), t.matrices.end());
    v.graphs.insert(v.graphs.end(), t.graphs.begin(), t.graphs.end());
    v.values.insert(v.values.end(), t.values.begin(), t.values.end());
    v.description = std::move(description);
    if (!t.note.empty()) v.description += " (" + t.note + ")";
    return v;
  }

  void record(Violation v, bool exemptable) {
    if (exemptable && h_.descriptor().single_diagonal_exemption) {
      report_.exempted.push_back(std::move(v));
    } else {
      report_.violations.push_back(std::move(v));
    }
  }

  /// Sets the reference from the first extreme value seen and checks it
  /// against the documented constant, if any.
  void set_reference(const TrialData& t, double value, std::optional<std::uint64_t> seed,
                     const std::string& witness, std::optional<double> documented) {
    reference_ = TrialData{};
    if (!t.matrices.empty()) reference_->matrices.push_back(t.matrices[0]);
    if (!t.graphs.empty()) reference_->graphs.push_back(t.graphs[0]);
    reference_value_ = value;
    if (documented && !(std::abs(value - *documented) <= opts_.tolerance)) {
      record(make(t, seed, witness,
                  fmt::format("extreme value {:.17g} differs from the documented constant {:.17g}",
                              value, *documented),
                  false),
             false);
    }
  }

  void agreement(const TrialData& t, std::optional<std::uint64_t> seed, const std::string& witness) {
    const bool is_max = check_ == Check::maximal_agreement;
    const double extreme = t.values[0];
    const double interior = t.values[1];
    const auto& d = h_.descriptor();
    if (std::isnan(extreme)) {
      record(make(t, seed, witness, "measure undefined on an extreme input", false), false);
      return;
    }
    if (!reference_) set_reference(t, extreme, seed, witness, is_max ? d.r_max : d.r_min);
    if (!(std::abs(extreme - reference_value_) <= opts_.tolerance)) {
      record(make(t, seed, witness,
                  fmt::format("extreme inputs give different values: {:.17g} vs {:.17g}",
                              reference_value_, extreme),
                  true),
             false);
    }
    const bool strictly_inside = is_max ? interior < reference_value_ - opts_.tolerance
                                        : interior > reference_value_ + opts_.tolerance;
    if (std::isnan(interior) || !strictly_inside) {
      record(make(t, seed, witness,
                  fmt::format("non-extreme input reaches the bound: {} vs {:.17g}",
                              describe_values(std::span(&interior, 1)), reference_value_),
                  true),
             t.exemptable);
    }
  }

  void baseline(const TrialData& t, std::optional<std::uint64_t> seed, const std::string& witness) {
    const double v = t.values.back();
    if (std::isnan(v)) {
      record(make(t, seed, witness, "measure undefined on a label-independent input", false),
             false);
      return;
    }
    // The reference is the first label-independent input: the full trial
    // input for graphs, the rand(C) matrix for matrices.
    if (!reference_) {
      reference_ = TrialData{};
      if (!t.matrices.empty()) reference_->matrices.push_back(t.matrices.back());
      if (!t.graphs.empty()) reference_->graphs.push_back(t.graphs.back());
      reference_value_ = v;
      const auto& documented = h_.descriptor().r_base;
      if (documented && !(std::abs(v - *documented) <= opts_.tolerance)) {
        record(make(t, seed, witness,
                    fmt::format("baseline {:.17g} differs from the documented constant {:.17g}", v,
                                *documented),
                    false),
               false);
      }
      return;
    }
    if (!(std::abs(v - reference_value_) <= opts_.tolerance)) {
      record(make(t, seed, witness,
                  fmt::format("label-independent inputs give different values: {:.17g} vs {:.17g}",
                              reference_value_, v),
                  true),
             false);
    }
  }

  void increase(const TrialData& t, std::optional<std::uint64_t> seed, const std::string& witness) {
    const double before = t.values[0];
    const double after = t.values[1];
    if (std::isnan(before) || std::isnan(after)) {
      record(make(t, seed, witness, "measure undefined before or after the edit", false),
             t.exemptable);
      return;
    }
    const double delta = after - before;
    if (delta > opts_.increase_slack) return;
    const std::string kind = delta < -opts_.decrease_tolerance ? "decreased" : "did not increase";
    record(make(t, seed, witness,
                fmt::format("measure {}: {:.17g} -> {:.17g}", kind, before, after), false),
           t.exemptable);
  }

  void equality(const TrialData& t, std::optional<std::uint64_t> seed, const std::string& witness) {
    const double a = t.values[0];
    const double b = t.values[1];
    if (std::isnan(a) || std::isnan(b) || !(std::abs(a - b) <= opts_.tolerance)) {
      record(make(t, seed, witness,
                  fmt::format("values differ: {}", describe_values(t.values)), false),
             false);
    }
  }

  void continuity(const TrialData& t, std::optional<std::uint64_t> seed,
                  const std::string& witness) {
    const double base = t.values[0];
    const double jump = std::abs(t.values[1] - base);
    const double refined = std::abs(t.values[2] - base);
    const double distance = max_norm_distance(t.matrices[0], t.matrices[1]);
    // A continuous function's jump shrinks with the perturbation; a jump that
    // survives a 100x refinement is flagged.
    if (std::isnan(jump) || std::isnan(refined) ||
        (jump > opts_.continuity_factor * distance && refined > 0.5 * jump)) {
      record(make(t, seed, witness,
                  fmt::format("jump {:.3g} at distance {:.3g}; {:.3g} after refinement", jump,
                              distance, refined),
                  false),
             false);
    }
  }

  const Measure& h_;
  Check check_;
  const CheckOptions& opts_;
  PropertyReport report_;
  std::optional<TrialData> reference_;
  double reference_value_{0.0};
};

}  // namespace

// ---------------------------------------------------------------------------

std::string_view check_name(Check c) {
  switch (c) {
    case Check::maximal_agreement: return "maximal-agreement";
    case Check::minimal_agreement: return "minimal-agreement";
    case Check::constant_baseline: return "constant-baseline";
    case Check::homo_monotonicity: return "homo-monotonicity";
    case Check::hetero_monotonicity: return "hetero-monotonicity";
    case Check::empty_class_tolerance: return "empty-class-tolerance";
    case Check::class_symmetry: return "class-symmetry";
    case Check::continuity: return "continuity";
  }
  return "unknown";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

NormalizedClassMatrix MatrixSampler::sample(Rng& rng) const {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const std::size_t m = rng.uniform_int(min_classes, max_classes);
    Matrix x(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        const double v = rng.uniform();
        x(i, j) = rng.bernoulli(zero_probability) ? 0.0 : v;
        x(j, i) = x(i, j);
      }
    if (x.nonzero_count() < 2) continue;
    return normalize(ClassAdjacency(std::move(x)));
  }
  throw std::runtime_error("matrix sampler could not produce a valid matrix");
}

NormalizedClassMatrix MatrixSampler::sample_fully_homophilic(Rng& rng) const {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const std::size_t m = rng.uniform_int(min_classes, max_classes);
    Matrix x(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = rng.uniform();
      x(i, i) = rng.bernoulli(zero_probability) ? 0.0 : v;
    }
    if (x.nonzero_count() < 2) continue;
    return normalize(ClassAdjacency(std::move(x)));
  }
  throw std::runtime_error("matrix sampler could not produce a valid matrix");
}

NormalizedClassMatrix MatrixSampler::sample_fully_heterophilic(Rng& rng) const {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const std::size_t m = rng.uniform_int(min_classes, max_classes);
    Matrix x(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const double v = rng.uniform();
        x(i, j) = rng.bernoulli(zero_probability) ? 0.0 : v;
        x(j, i) = x(i, j);
      }
    if (x.nonzero_count() < 2) continue;
    return normalize(ClassAdjacency(std::move(x)));
  }
  throw std::runtime_error("matrix sampler could not produce a valid matrix");
}

namespace {

// Labels with every class present; the first `per_class * m` nodes are
// assigned round-robin, the rest uniformly.
std::vector<ClassId> random_labels(Rng& rng, std::size_t n, std::size_t m, std::size_t per_class) {
  std::vector<ClassId> labels(n);
  for (NodeId v = 0; v < n; ++v) {
    labels[v] = v < per_class * m ? v % m : rng.uniform_int(0, m - 1);
  }
  return labels;
}

using PairFilter = std::function<bool(ClassId, ClassId)>;

LabeledGraph random_graph(Rng& rng, std::vector<ClassId> labels, std::size_t m,
                          const PairFilter& allowed) {
  const std::size_t n = labels.size();
  const double p = rng.uniform(0.15, 0.5);
  std::vector<Edge> edges;
  std::vector<bool> touched(n, false);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (allowed(labels[u], labels[v]) && rng.bernoulli(p)) {
        edges.push_back({u, v, 1.0});
        touched[u] = touched[v] = true;
      }
  for (NodeId u = 0; u < n; ++u) {
    if (touched[u]) continue;
    std::vector<NodeId> partners;
    for (NodeId v = 0; v < n; ++v)
      if (v != u && allowed(labels[u], labels[v])) partners.push_back(v);
    const NodeId v = partners[rng.uniform_int(0, partners.size() - 1)];
    edges.push_back({u, v, 1.0});
    touched[u] = touched[v] = true;
  }
  return LabeledGraph(std::move(labels), m, std::move(edges));
}

}  // namespace

LabeledGraph GraphSampler::sample(Rng& rng) const {
  const std::size_t n = rng.uniform_int(min_nodes, max_nodes);
  const std::size_t m = rng.uniform_int(min_classes, std::min(max_classes, n / 2));
  return random_graph(rng, random_labels(rng, n, m, 1), m, [](ClassId, ClassId) { return true; });
}

LabeledGraph GraphSampler::sample_fully_homophilic(Rng& rng) const {
  const std::size_t n = rng.uniform_int(min_nodes, max_nodes);
  const std::size_t m = rng.uniform_int(min_classes, std::min(max_classes, n / 2));
  return random_graph(rng, random_labels(rng, n, m, 2), m,
                      [](ClassId a, ClassId b) { return a == b; });
}

LabeledGraph GraphSampler::sample_fully_heterophilic(Rng& rng) const {
  const std::size_t n = rng.uniform_int(min_nodes, max_nodes);
  const std::size_t m = rng.uniform_int(min_classes, std::min(max_classes, n / 2));
  return random_graph(rng, random_labels(rng, n, m, 1), m,
                      [](ClassId a, ClassId b) { return a != b; });
}

LabeledGraph GraphSampler::sample_label_independent(Rng& rng) const {
  const std::size_t n = rng.uniform_int(min_nodes, max_nodes);
  const std::size_t m = rng.uniform_int(min_classes, std::min(max_classes, n / 2));
  std::vector<ClassId> labels = random_labels(rng, n, m, 1);
  std::vector<double> s(n);
  for (auto& x : s) x = rng.uniform(0.1, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    edges.push_back({u, u, s[u] * s[u] / 2.0});
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, s[u] * s[v]});
  }
  return LabeledGraph(std::move(labels), m, std::move(edges));
}

// ---------------------------------------------------------------------------

PropertyReport run_check(const Measure& h, Check check, const CheckOptions& opts) {
  if (check == Check::continuity && !h.is_matrix_level()) {
    PropertyReport r;
    r.measure = h.name();
    r.check = check;
    r.verdict = Verdict::not_applicable;
    r.note = "continuity is defined on class matrices only";
    return r;
  }
  Evaluator ev(h, check, opts);
  for (const Pinned& p : pinned_witnesses(h, check, opts)) ev.consume(p.data, std::nullopt, p.name);
  for (std::size_t i = 0; i < opts.trials; ++i) {
    const std::uint64_t seed = stream_seed(opts.seed, i);
    ev.consume(run_trial(h, check, seed, opts), seed, "");
  }
  return ev.finish();
}

PropertyReport check_maximal_agreement(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::maximal_agreement, opts);
}
PropertyReport check_minimal_agreement(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::minimal_agreement, opts);
}
PropertyReport check_constant_baseline(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::constant_baseline, opts);
}
PropertyReport check_homo_monotonicity(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::homo_monotonicity, opts);
}
PropertyReport check_hetero_monotonicity(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::hetero_monotonicity, opts);
}
PropertyReport check_empty_class_tolerance(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::empty_class_tolerance, opts);
}
PropertyReport check_class_symmetry(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::class_symmetry, opts);
}
PropertyReport check_continuity(const Measure& h, const CheckOptions& opts) {
  return run_check(h, Check::continuity, opts);
}

bool replay_violation(const Measure& h, Check check, const Violation& v, const CheckOptions& opts) {
  TrialData t;
  if (v.trial_seed) {
    t = run_trial(h, check, *v.trial_seed, opts);
  } else {
    bool found = false;
    for (Pinned& p : pinned_witnesses(h, check, opts)) {
      if (p.name == v.witness) {
        t = std::move(p.data);
        found = true;
      }
    }
    if (!found) return false;
  }
  // Violations may carry a reference input in front of the trial data.
  if (v.matrices.size() < t.matrices.size() || v.graphs.size() < t.graphs.size() ||
      v.values.size() < t.values.size()) {
    return false;
  }
  const std::size_t mo = v.matrices.size() - t.matrices.size();
  const std::size_t go = v.graphs.size() - t.graphs.size();
  const std::size_t vo = v.values.size() - t.values.size();
  for (std::size_t k = 0; k < t.matrices.size(); ++k)
    if (!(v.matrices[mo + k] == t.matrices[k])) return false;
  for (std::size_t k = 0; k < t.graphs.size(); ++k)
    if (!same_graph(v.graphs[go + k], t.graphs[k])) return false;
  for (std::size_t k = 0; k < t.values.size(); ++k)
    if (!same_bits(v.values[vo + k], t.values[k])) return false;
  // The reference part must re-evaluate to the stored value as well.
  if (vo == 1) {
    const double ref = !v.matrices.empty() && mo == 1 ? value_or_nan(h.evaluate(v.matrices[0]))
                       : go == 1                      ? value_or_nan(h.evaluate(v.graphs[0]))
                                                      : kNaN;
    if (!same_bits(ref, v.values[0])) return false;
  }
  return true;
}

namespace {

Cell cell_of(const Measure& h, const PropertyReport& r) {
  if (r.verdict == Verdict::not_applicable) return Cell::not_applicable;
  if (r.verdict == Verdict::fail) return Cell::fail;
  if (!r.exempted.empty() && h.descriptor().single_diagonal_exemption) {
    return Cell::exempt_single_diagonal;
  }
  return Cell::pass;
}

Cell combine(Cell a, Cell b) {
  if (a == Cell::fail || b == Cell::fail) return Cell::fail;
  if (a == Cell::not_applicable) return b;
  if (b == Cell::not_applicable) return a;
  if (a == Cell::exempt_single_diagonal || b == Cell::exempt_single_diagonal) {
    return Cell::exempt_single_diagonal;
  }
  return Cell::pass;
}

std::size_t column(Property p) {
  return static_cast<std::size_t>(std::ranges::find(kAllProperties, p) - kAllProperties.begin());
}

}  // namespace

ProfileRow full_profile(const Measure& h, const CheckOptions& opts) {
  ProfileRow row;
  row.measure = h.name();
  std::optional<Cell> mono;
  for (Check c : kAllChecks) {
    PropertyReport r = run_check(h, c, opts);
    const Cell cell = cell_of(h, r);
    switch (c) {
      case Check::continuity: row.cells[column(Property::continuity)] = cell; break;
      case Check::maximal_agreement: row.cells[column(Property::maximal_agreement)] = cell; break;
      case Check::minimal_agreement: row.cells[column(Property::minimal_agreement)] = cell; break;
      case Check::constant_baseline: row.cells[column(Property::constant_baseline)] = cell; break;
      case Check::homo_monotonicity:
      case Check::hetero_monotonicity: mono = mono ? combine(*mono, cell) : cell; break;
      case Check::empty_class_tolerance:
        row.cells[column(Property::empty_class_tolerance)] = cell;
        break;
      case Check::class_symmetry: row.cells[column(Property::class_symmetry)] = cell; break;
    }
    row.reports.push_back(std::move(r));
  }
  row.cells[column(Property::monotonicity)] = *mono;
  return row;
}

std::vector<Property> profile_mismatches(const Measure& h, const ProfileRow& row) {
  std::vector<Property> out;
  const auto& expected = h.descriptor().expected_profile;
  if (!expected) return out;
  for (Property p : kAllProperties) {
    if ((*expected)[column(p)] != row.cells[column(p)]) out.push_back(p);
  }
  return out;
}

ContinuityProbe probe_pair(const Measure& h, const NormalizedClassMatrix& a,
                           const NormalizedClassMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrices must have the same size");
  ContinuityProbe p;
  p.value_a = h.evaluate(a).value();
  p.value_b = h.evaluate(b).value();
  p.jump = std::abs(p.value_b - p.value_a);
  p.distance = max_norm_distance(a, b);
  return p;
}

double Disproof::gap() const { return std::abs(value_a - value_b); }

std::vector<Disproof> adjusted_nominal_disproofs() {
  std::vector<Disproof> out;
  {
    const NormalizedClassMatrix homo(Matrix{{0.5, 0.0}, {0.0, 0.5}});
    const std::vector<double> even = {0.5, 0.5}, skew = {0.2, 0.8};
    out.push_back({Check::maximal_agreement,
                   "fully homophilic C = diag(.5,.5) with class fractions (.5,.5) vs (.2,.8)",
                   adjusted_nominal_assortativity(homo, even),
                   adjusted_nominal_assortativity(homo, skew)});
  }
  {
    const std::vector<double> third(3, 1.0 / 3.0), quarter(4, 0.25);
    out.push_back({Check::minimal_agreement,
                   "complete heterophilic configurations, 3 vs 4 equal classes",
                   adjusted_nominal_assortativity(uniform_heterophilic(3), third),
                   adjusted_nominal_assortativity(uniform_heterophilic(4), quarter)});
  }
  {
    const NormalizedClassMatrix r = outer({0.5, 0.5});
    const std::vector<double> even = {0.5, 0.5}, skew = {0.2, 0.8};
    out.push_back({Check::constant_baseline,
                   "label-independent C = rand(C), a = (.5,.5), class fractions (.5,.5) vs (.2,.8)",
                   adjusted_nominal_assortativity(r, even),
                   adjusted_nominal_assortativity(r, skew)});
  }
  return out;
}

}  // namespace homophily
