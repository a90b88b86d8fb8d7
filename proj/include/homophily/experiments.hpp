#pragma once

// Empirical studies: how often two measures agree on which of two graphs is
// more homophilic, per-graph homophily reports, the adjusted-vs-unbiased
// grid on evenly spread class matrices, and Monte Carlo baselines.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homophily/graph.hpp"
#include "homophily/measures.hpp"
#include "homophily/rng.hpp"

namespace homophily {

// ---------------------------------------------------------------------------
// Agreement experiment

enum class TieMode {
  /// |a - b| <= 1e-12 counts as "equally homophilic", a third outcome.
  trichotomy,
  /// Only the sign of a - b, without tolerance.
  strict_sign,
};

std::string_view tie_mode_name(TieMode mode);
/// Throws std::invalid_argument on unknown names.
TieMode parse_tie_mode(std::string_view name);

/// Outcome of comparing the first graph's value `a` with the second's `b`:
/// +1 first more homophilic, -1 second more, 0 equal.
int compare_values(double a, double b, TieMode mode);

struct GraphPair {
  LabeledGraph first;
  LabeledGraph second;
  /// Both sides are the same corpus entry (only possible for corpora).
  bool identical{false};
};

/// Produces the pair for one pair index from that index's own stream.
using PairSource = std::function<GraphPair(Rng&)>;

/// Two independent generator draws seeded from the stream.
PairSource generator_pair_source(std::function<LabeledGraph(std::uint64_t)> generator);

/// The synthetic generator with m classes on 100 nodes.
PairSource agreement_pair_source();

/// Two corpus entries drawn independently and with replacement. Throws
/// std::invalid_argument for fewer than two graphs.
PairSource corpus_pair_source(std::vector<LabeledGraph> corpus);

struct AgreementMatrix {
  std::vector<std::string> measures;
  std::size_t pairs{0};
  std::uint64_t seed{0};
  TieMode tie_mode{TieMode::trichotomy};
  /// agree[i][j]: pairs where measures i and j give the same outcome.
  std::vector<std::vector<std::size_t>> agree;
  /// comparable[i][j]: pairs where both measures are defined on both graphs.
  std::vector<std::vector<std::size_t>> comparable;
  std::size_t identical_pairs{0};

  /// Percentage in [0, 100]; nullopt when no pair was comparable.
  std::optional<double> percent(std::size_t i, std::size_t j) const;
  /// Pairs left out of cell (i, j) because some value was undefined.
  std::size_t excluded(std::size_t i, std::size_t j) const { return pairs - comparable[i][j]; }
};

/// Evaluates every measure on both graphs of `pairs` pairs. Pair k is drawn
/// from Rng(stream_seed(seed, k)), so the result does not depend on the
/// order in which pairs are processed. Throws std::invalid_argument when
/// there are no measures or no pairs.
AgreementMatrix agreement_experiment(const PairSource& source, const std::vector<Measure>& measures,
                                     std::size_t pairs, std::uint64_t seed,
                                     TieMode tie_mode = TieMode::trichotomy);

/// edge, node, class, adjusted.
std::vector<Measure> agreement_catalog();

// ---------------------------------------------------------------------------
// Homophily report

struct MeasureEntry {
  std::string name;
  MeasureValue value;
};

struct HomophilyReport {
  std::size_t nodes{0};
  std::size_t edges{0};
  std::size_t classes{0};
  std::vector<MeasureEntry> values;
};

/// edge, node, class, adjusted, unbiased.
std::vector<Measure> report_catalog();

/// Evaluates `measures` (default: report_catalog()) on g. Undefined values
/// are carried as markers, not errors.
HomophilyReport homophily_report(const LabeledGraph& g, const std::vector<Measure>& measures);
HomophilyReport homophily_report(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Adjusted vs unbiased on evenly spread class matrices

/// c_ii = p/m, c_ij = (1 - p)/(m(m - 1)). Requires m >= 2, p in [0, 1].
NormalizedClassMatrix even_spread_matrix(std::size_t m, double p);

/// The p at which the even-spread matrix has unbiased homophily h:
/// p = (1 + h)/(m - h(m - 2)).
double even_spread_p(std::size_t m, double h);

struct GridCell {
  std::size_t m{0};
  double h_unbiased{0.0};
  double p{0.0};
  double h_adjusted{0.0};
  /// Unbiased homophily recomputed from the constructed matrix.
  double round_trip{0.0};
};

struct GridTable {
  std::vector<std::size_t> m_values;
  std::vector<double> h_values;
  /// Row-major: cells[r * h_values.size() + c].
  std::vector<GridCell> cells;

  const GridCell& at(std::size_t row, std::size_t col) const {
    return cells.at(row * h_values.size() + col);
  }
};

/// Throws std::invalid_argument for m < 2 or h outside [-1, 1], and
/// std::logic_error if a constructed matrix misses its target by > 1e-10.
GridTable adj_vs_unb_grid(const std::vector<std::size_t>& m_values,
                          const std::vector<double>& h_values);

/// lo, lo + step, ..., hi (hi included when reached within step/1000).
/// Values within 1e-12 of zero are stored as exactly zero.
std::vector<double> value_range(double lo, double hi, double step);

// ---------------------------------------------------------------------------
// Monte Carlo

struct MeasureStats {
  std::string name;
  std::size_t defined{0};
  double mean{0.0};
  double stddev{0.0};
};

/// Evaluates each measure on generator(stream_seed(seed, r)) for r < reps.
std::vector<MeasureStats> monte_carlo(const std::function<LabeledGraph(std::uint64_t)>& generator,
                                      const std::vector<Measure>& measures, std::size_t reps,
                                      std::uint64_t seed);

}  // namespace homophily
