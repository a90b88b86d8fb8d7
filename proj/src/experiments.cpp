#include "homophily/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "homophily/generators.hpp"

namespace homophily {

std::string_view tie_mode_name(TieMode mode) {
  return mode == TieMode::trichotomy ? "trichotomy" : "strict";
}

TieMode parse_tie_mode(std::string_view name) {
  if (name == "trichotomy") return TieMode::trichotomy;
  if (name == "strict") return TieMode::strict_sign;
  throw std::invalid_argument("unknown tie mode '" + std::string(name) + "'");
}

int compare_values(double a, double b, TieMode mode) {
  if (mode == TieMode::trichotomy && std::abs(a - b) <= kValueTolerance) return 0;
  return (a > b) - (a < b);
}

PairSource generator_pair_source(std::function<LabeledGraph(std::uint64_t)> generator) {
  return [generator = std::move(generator)](Rng& rng) {
    const std::uint64_t a = rng.next();
    const std::uint64_t b = rng.next();
    return GraphPair{generator(a), generator(b), false};
  };
}

PairSource agreement_pair_source() { return generator_pair_source(agreement_random_graph); }

PairSource corpus_pair_source(std::vector<LabeledGraph> corpus) {
  if (corpus.size() < 2) throw std::invalid_argument("a corpus needs at least two graphs");
  auto shared = std::make_shared<const std::vector<LabeledGraph>>(std::move(corpus));
  return [shared](Rng& rng) {
    const std::size_t i = rng.uniform_int(0, shared->size() - 1);
    const std::size_t j = rng.uniform_int(0, shared->size() - 1);
    return GraphPair{(*shared)[i], (*shared)[j], i == j};
  };
}

std::optional<double> AgreementMatrix::percent(std::size_t i, std::size_t j) const {
  if (comparable[i][j] == 0) return std::nullopt;
  return 100.0 * static_cast<double>(agree[i][j]) / static_cast<double>(comparable[i][j]);
}

AgreementMatrix agreement_experiment(const PairSource& source, const std::vector<Measure>& measures,
                                     std::size_t pairs, std::uint64_t seed, TieMode tie_mode) {
  if (measures.empty()) throw std::invalid_argument("agreement needs at least one measure");
  if (pairs == 0) throw std::invalid_argument("agreement needs at least one pair");
  const std::size_t k = measures.size();
  AgreementMatrix out;
  for (const Measure& h : measures) out.measures.push_back(h.name());
  out.pairs = pairs;
  out.seed = seed;
  out.tie_mode = tie_mode;
  out.agree.assign(k, std::vector<std::size_t>(k, 0));
  out.comparable.assign(k, std::vector<std::size_t>(k, 0));

  std::vector<std::optional<int>> outcome(k);
  for (std::size_t pair = 0; pair < pairs; ++pair) {
    Rng rng(stream_seed(seed, pair));
    const GraphPair gp = source(rng);
    out.identical_pairs += gp.identical ? 1 : 0;
    for (std::size_t a = 0; a < k; ++a) {
      const MeasureValue x = measures[a].evaluate(gp.first);
      const MeasureValue y = measures[a].evaluate(gp.second);
      outcome[a] = x.defined() && y.defined()
                       ? std::optional<int>(compare_values(x.value(), y.value(), tie_mode))
                       : std::nullopt;
    }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        if (!outcome[a] || !outcome[b]) continue;
        ++out.comparable[a][b];
        if (*outcome[a] == *outcome[b]) ++out.agree[a][b];
      }
  }
  return out;
}

std::vector<Measure> agreement_catalog() {
  return {make_measure("edge"), make_measure("node"), make_measure("class"),
          make_measure("adjusted")};
}

std::vector<Measure> report_catalog() {
  return {make_measure("edge"), make_measure("node"), make_measure("class"),
          make_measure("adjusted"), make_measure("unbiased")};
}

HomophilyReport homophily_report(const LabeledGraph& g, const std::vector<Measure>& measures) {
  HomophilyReport r;
  r.nodes = g.node_count();
  r.edges = g.edge_count();
  r.classes = g.class_count();
  for (const Measure& h : measures) r.values.push_back({h.name(), h.evaluate(g)});
  return r;
}

HomophilyReport homophily_report(const LabeledGraph& g) {
  return homophily_report(g, report_catalog());
}

NormalizedClassMatrix even_spread_matrix(std::size_t m, double p) {
  if (m < 2) throw std::invalid_argument("even spread needs m >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const double md = static_cast<double>(m);
  Matrix c(m, (1.0 - p) / (md * (md - 1.0)));
  for (std::size_t i = 0; i < m; ++i) c(i, i) = p / md;
  return NormalizedClassMatrix(std::move(c));
}

double even_spread_p(std::size_t m, double h) {
  if (m < 2) throw std::invalid_argument("even spread needs m >= 2");
  if (!(h >= -1.0 && h <= 1.0)) throw std::invalid_argument("h must lie in [-1, 1]");
  const double md = static_cast<double>(m);
  const double p = (1.0 + h) / (md - h * (md - 2.0));
  if (!(p >= 0.0 && p <= 1.0 + 1e-15)) throw std::logic_error("p fell outside [0, 1]");
  return std::min(p, 1.0);
}

GridTable adj_vs_unb_grid(const std::vector<std::size_t>& m_values,
                          const std::vector<double>& h_values) {
  GridTable t{m_values, h_values, {}};
  for (std::size_t m : m_values) {
    for (double h : h_values) {
      GridCell cell;
      cell.m = m;
      cell.h_unbiased = h;
      cell.p = even_spread_p(m, h);
      const NormalizedClassMatrix c = even_spread_matrix(m, cell.p);
      cell.h_adjusted = adjusted_homophily(c);
      cell.round_trip = unbiased_homophily(c);
      if (std::abs(cell.round_trip - h) > 1e-10) {
        throw std::logic_error("even-spread matrix misses its unbiased homophily target");
      }
      t.cells.push_back(cell);
    }
  }
  return t;
}

std::vector<double> value_range(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (hi < lo) throw std::invalid_argument("empty range");
  std::vector<double> out;
  // Index-based so that rounding does not accumulate.
  for (std::size_t k = 0;; ++k) {
    double v = lo + static_cast<double>(k) * step;
    if (v > hi + step * 1e-3) break;
    if (std::abs(v) < 1e-12) v = 0.0;
    if (std::abs(v - hi) <= step * 1e-3) v = hi;
    out.push_back(v);
  }
  return out;
}

std::vector<MeasureStats> monte_carlo(const std::function<LabeledGraph(std::uint64_t)>& generator,
                                      const std::vector<Measure>& measures, std::size_t reps,
                                      std::uint64_t seed) {
  // Welford's update; the textbook sum-of-squares formula cancels badly
  // when the spread is tiny.
  std::vector<MeasureStats> stats;
  std::vector<double> m2(measures.size(), 0.0);
  for (const Measure& h : measures) stats.push_back({h.name(), 0, 0.0, 0.0});
  for (std::size_t r = 0; r < reps; ++r) {
    const LabeledGraph g = generator(stream_seed(seed, r));
    for (std::size_t k = 0; k < measures.size(); ++k) {
      const MeasureValue v = measures[k].evaluate(g);
      if (!v.defined()) continue;
      MeasureStats& s = stats[k];
      ++s.defined;
      const double delta = v.value() - s.mean;
      s.mean += delta / static_cast<double>(s.defined);
      m2[k] += delta * (v.value() - s.mean);
    }
  }
  for (std::size_t k = 0; k < measures.size(); ++k) {
    if (stats[k].defined > 1) {
      stats[k].stddev = std::sqrt(m2[k] / static_cast<double>(stats[k].defined - 1));
    }
  }
  return stats;
}

}  // namespace homophily
