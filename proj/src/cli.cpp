#include "homophily/cli.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "homophily/directed.hpp"
#include "homophily/experiments.hpp"
#include "homophily/generators.hpp"
#include "homophily/io.hpp"
#include "homophily/measures.hpp"
#include "homophily/properties.hpp"
#include "json.hpp"

namespace homophily {
namespace {

using json = nlohmann::ordered_json;

// Bad flag combinations or values found after CLI11 has parsed.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised after the report is written when some result is undefined.
struct UndefinedResult {};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(fmt::format("bad {} '{}'", what, s));
  }
  return v;
}

// "2..10" or "2,3,5".
std::vector<std::size_t> parse_m_values(const std::string& s) {
  std::vector<std::size_t> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parse_number<std::size_t>(s.substr(0, dots), "class count");
    const auto hi = parse_number<std::size_t>(s.substr(dots + 2), "class count");
    if (hi < lo) throw UsageError("empty class-count range '" + s + "'");
    for (std::size_t m = lo; m <= hi; ++m) out.push_back(m);
  } else {
    for (const auto& t : split(s, ',')) out.push_back(parse_number<std::size_t>(t, "class count"));
  }
  if (out.empty()) throw UsageError("no class counts given");
  return out;
}

// "-1..1:0.2" or "-1,0,0.5".
std::vector<double> parse_h_values(const std::string& s) {
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto colon = s.find(':', dots);
    if (colon == std::string::npos) throw UsageError("range '" + s + "' needs ':step'");
    const double lo = parse_number<double>(s.substr(0, dots), "value");
    const double hi = parse_number<double>(s.substr(dots + 2, colon - dots - 2), "value");
    const double step = parse_number<double>(s.substr(colon + 1), "step");
    try {
      return value_range(lo, hi, step);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_number<double>(t, "value"));
  if (out.empty()) throw UsageError("no values given");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_number<std::size_t>(t, "class size"));
  return out;
}

std::vector<Measure> parse_measures(const std::string& list, double alpha) {
  std::vector<Measure> out;
  for (std::string name : split(list, ',')) {
    if (name == "unbiased-alpha") name += fmt::format(":{}", alpha);
    try {
      out.push_back(make_measure(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("no measures given");
  return out;
}

json value_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------
// Report plumbing

struct Output {
  std::string format{"csv"};
  std::string path;
};

void add_output_options(CLI::App* sub, Output& o) {
  sub->add_option("--format", o.format, "csv (4 decimals) or json (full precision)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output,-o", o.path, "write the report here instead of stdout");
}

struct Header {
  std::string command;
  std::optional<std::uint64_t> seed;
  json config;

  // Covers everything that determines the report body.
  std::string hash() const {
    const std::string seed_text = seed ? std::to_string(*seed) : "-";
    return fmt::format("{:016x}", fnv1a64(command + '\n' + seed_text + '\n' + config.dump()));
  }
  json to_json() const {
    json h;
    h["tool"] = kToolName;
    h["version"] = kToolVersion;
    h["command"] = command;
    h["seed"] = seed ? json(*seed) : json(nullptr);
    h["config_hash"] = hash();
    h["config"] = config;
    return h;
  }
  std::string to_csv() const {
    return fmt::format("# {} {} command={} seed={} config_hash={}\n# config {}\n", kToolName,
                       kToolVersion, command, seed ? std::to_string(*seed) : "-", hash(),
                       config.dump());
  }
};

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
  } else {
    write_file(o.path, text);
  }
}

std::string json_report(const Header& h, json body) {
  json doc;
  doc["header"] = h.to_json();
  for (auto& [k, v] : body.items()) doc[k] = v;
  return doc.dump(2) + '\n';
}

// ---------------------------------------------------------------------------
// Preprocessing flags

struct PreprocessFlags {
  bool undirected{false};
  bool drop_self_loops{false};
  bool merge_multi{false};
  bool simplify{false};
  std::string merge_mode{"dedup"};
  CLI::Option* merge_mode_opt{nullptr};
};

void add_preprocess_flags(CLI::App* sub, PreprocessFlags& f) {
  auto* u = sub->add_flag("--undirected", f.undirected,
                          "read edges as arcs; a pair linked both ways becomes one edge");
  auto* d = sub->add_flag("--drop-self-loops", f.drop_self_loops, "remove self-loops");
  auto* m = sub->add_flag("--merge-multi", f.merge_multi, "collapse parallel edges");
  f.merge_mode_opt = sub->add_option("--merge-mode", f.merge_mode,
                                     "dedup (unit weight) or sum (total weight)")
                         ->check(CLI::IsMember({"dedup", "sum"}));
  sub->add_flag("--simplify", f.simplify,
                "shorthand for --undirected --drop-self-loops --merge-multi")
      ->excludes(u)
      ->excludes(d)
      ->excludes(m);
}

ReadOptions read_options(const PreprocessFlags& f) {
  if (f.merge_mode_opt->count() > 0 && !f.merge_multi && !f.simplify) {
    throw UsageError("--merge-mode needs --merge-multi or --simplify");
  }
  ReadOptions o;
  o.undirected = f.undirected || f.simplify;
  o.preprocess.drop_self_loops = f.drop_self_loops || f.simplify;
  o.preprocess.merge_multi_edges = f.merge_multi || f.simplify;
  o.preprocess.merge_mode = f.merge_mode == "sum" ? MergeMode::sum_weights : MergeMode::deduplicate;
  return o;
}

json preprocess_config(const ReadOptions& o) {
  return {{"undirected", o.undirected},
          {"drop_self_loops", o.preprocess.drop_self_loops},
          {"merge_multi", o.preprocess.merge_multi_edges},
          {"merge_mode", o.preprocess.merge_mode == MergeMode::sum_weights ? "sum" : "dedup"}};
}

// ---------------------------------------------------------------------------
// compute

struct ComputeArgs {
  std::vector<std::string> graphs;
  std::vector<std::string> labels;
  std::string measures{"edge,node,class,adjusted,unbiased"};
  double alpha{kDefaultAlpha};
  PreprocessFlags pre;
  Output out;
};

void run_compute(const ComputeArgs& a, std::ostream& out) {
  const ReadOptions ro = read_options(a.pre);
  const std::vector<Measure> ms = parse_measures(a.measures, a.alpha);
  std::size_t edge_lists = 0;
  for (const auto& g : a.graphs) edge_lists += std::filesystem::path(g).extension() != ".json";
  if (edge_lists != a.labels.size()) {
    throw UsageError(fmt::format("{} edge-list graph(s) but {} label file(s)", edge_lists,
                                 a.labels.size()));
  }

  Header h{"compute", std::nullopt, {}};
  h.config["graphs"] = a.graphs;
  h.config["labels"] = a.labels;
  json names = json::array();
  for (const Measure& m : ms) names.push_back(m.name());
  h.config["measures"] = names;
  h.config["preprocess"] = preprocess_config(ro);

  std::vector<HomophilyReport> reports;
  std::size_t next_label = 0;
  for (const auto& g : a.graphs) {
    std::optional<std::filesystem::path> labels;
    if (std::filesystem::path(g).extension() != ".json") labels = a.labels[next_label++];
    reports.push_back(homophily_report(read_graph(g, labels, ro).graph, ms));
  }

  std::string text;
  if (a.out.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const HomophilyReport& r = reports[i];
      json values, undefined = json::object();
      for (const MeasureEntry& e : r.values) {
        values[e.name] = e.value.defined() ? json(e.value.value()) : json(nullptr);
        if (!e.value.defined()) undefined[e.name] = reason_code(e.value.reason());
      }
      rows.push_back({{"graph", a.graphs[i]}, {"n", r.nodes}, {"edges", r.edges},
                      {"m", r.classes}, {"values", values}, {"undefined", undefined}});
    }
    text = json_report(h, {{"rows", rows}});
  } else {
    text = h.to_csv() + "graph,n,edges,m";
    for (const Measure& m : ms) text += "," + m.name();
    text += '\n';
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const HomophilyReport& r = reports[i];
      text += fmt::format("{},{},{},{}", a.graphs[i], r.nodes, r.edges, r.classes);
      for (const MeasureEntry& e : r.values) {
        text += "," + (e.value.defined() ? csv_number(e.value.value()) : std::string("undefined"));
      }
      text += '\n';
    }
  }
  emit(a.out, text, out);

  for (std::size_t k = 0; k < ms.size(); ++k) {
    bool any = false;
    for (const auto& r : reports) any = any || r.values[k].value.defined();
    if (!any) throw UndefinedResult{};
  }
}

// ---------------------------------------------------------------------------
// properties

struct PropertiesArgs {
  std::string measure;
  std::size_t trials{1000};
  std::uint64_t seed{1};
  double alpha{kDefaultAlpha};
  std::size_t max_violations{5};
  Output out;
};

json violation_json(const Violation& v) {
  json values = json::array();
  for (double x : v.values) values.push_back(value_or_null(x));
  return {{"witness", v.witness.empty() ? json(nullptr) : json(v.witness)},
          {"trial_seed", v.trial_seed ? json(*v.trial_seed) : json(nullptr)},
          {"description", v.description},
          {"values", values}};
}

// Pinned witnesses always, plus at most `limit` random ones.
json violation_list(const std::vector<Violation>& vs, std::size_t limit) {
  json out = json::array();
  std::size_t random = 0;
  for (const Violation& v : vs) {
    if (!v.witness.empty()) {
      out.push_back(violation_json(v));
    } else if (random < limit) {
      out.push_back(violation_json(v));
      ++random;
    }
  }
  return out;
}

void run_properties(const PropertiesArgs& a, std::ostream& out) {
  const std::vector<Measure> ms = parse_measures(a.measure, a.alpha);
  if (ms.size() != 1) throw UsageError("properties takes exactly one measure");
  const Measure& m = ms.front();
  CheckOptions opts;
  opts.trials = a.trials;
  opts.seed = a.seed;
  const ProfileRow row = full_profile(m, opts);
  const std::vector<Property> mismatches = profile_mismatches(m, row);
  const auto& expected = m.descriptor().expected_profile;

  Header h{"properties", a.seed, {}};
  h.config["measure"] = m.name();
  h.config["trials"] = a.trials;
  h.config["max_violations"] = a.max_violations;

  std::string text;
  if (a.out.format == "json") {
    json cells, exp = expected ? json::object() : json(nullptr);
    for (std::size_t k = 0; k < kPropertyCount; ++k) {
      cells[std::string(property_name(kAllProperties[k]))] = cell_name(row.cells[k]);
      if (expected) exp[std::string(property_name(kAllProperties[k]))] = cell_name((*expected)[k]);
    }
    json mm = json::array();
    for (Property p : mismatches) mm.push_back(property_name(p));
    json checks = json::array();
    for (const PropertyReport& r : row.reports) {
      checks.push_back(
          {{"check", check_name(r.check)},
           {"verdict", verdict_name(r.verdict)},
           {"trials", r.trials},
           {"violation_count", r.violations.size()},
           {"exempted_count", r.exempted.size()},
           {"empirical_constant",
            r.empirical_constant ? json(*r.empirical_constant) : json(nullptr)},
           {"note", r.note},
           {"violations", violation_list(r.violations, a.max_violations)},
           {"exempted", violation_list(r.exempted, a.max_violations)}});
    }
    text = json_report(h, {{"measure", m.name()},
                           {"cells", cells},
                           {"expected", exp},
                           {"mismatches", mm},
                           {"checks", checks}});
  } else {
    text = h.to_csv() + "property,cell,expected\n";
    for (std::size_t k = 0; k < kPropertyCount; ++k) {
      text += fmt::format("{},{},{}\n", property_name(kAllProperties[k]), cell_name(row.cells[k]),
                          expected ? cell_name((*expected)[k]) : "-");
    }
    for (const PropertyReport& r : row.reports) {
      text += fmt::format("# {}: {} ({} violations, {} exempted)\n", check_name(r.check),
                          verdict_name(r.verdict), r.violations.size(), r.exempted.size());
      for (const Violation& v : r.violations) {
        if (!v.witness.empty()) text += fmt::format("#   {}: {}\n", v.witness, v.description);
      }
    }
  }
  emit(a.out, text, out);
}

// ---------------------------------------------------------------------------
// agree

struct AgreeArgs {
  std::size_t pairs{1000};
  std::uint64_t seed{1};
  std::string measures{"edge,node,class,adjusted"};
  double alpha{kDefaultAlpha};
  std::string tie_mode{"trichotomy"};
  std::string corpus;
  PreprocessFlags pre;
  Output out;
};

void run_agree(const AgreeArgs& a, std::ostream& out) {
  const ReadOptions ro = read_options(a.pre);
  const std::vector<Measure> ms = parse_measures(a.measures, a.alpha);
  const TieMode tie = parse_tie_mode(a.tie_mode);
  Header h{"agree", a.seed, {}};
  h.config["pairs"] = a.pairs;
  json names = json::array();
  for (const Measure& m : ms) names.push_back(m.name());
  h.config["measures"] = names;
  h.config["tie_mode"] = tie_mode_name(tie);
  h.config["source"] = a.corpus.empty() ? json("synthetic") : json(a.corpus);
  if (!a.corpus.empty()) h.config["preprocess"] = preprocess_config(ro);

  PairSource source;
  if (a.corpus.empty()) {
    source = agreement_pair_source();
  } else {
    std::vector<LabeledGraph> graphs;
    for (auto& [name, g] : read_corpus(a.corpus, ro)) graphs.push_back(std::move(g.graph));
    if (graphs.size() < 2) throw ParseError(a.corpus, 0, 0, "a corpus needs at least two graphs");
    source = corpus_pair_source(std::move(graphs));
  }
  const AgreementMatrix r = agreement_experiment(source, ms, a.pairs, a.seed, tie);
  const std::size_t k = ms.size();

  std::string text;
  if (a.out.format == "json") {
    json percent = json::array(), agree = json::array(), comparable = json::array();
    for (std::size_t i = 0; i < k; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < k; ++j) {
        const auto p = r.percent(i, j);
        row.push_back(i == j || !p ? json(nullptr) : json(*p));
      }
      percent.push_back(row);
      agree.push_back(r.agree[i]);
      comparable.push_back(r.comparable[i]);
    }
    text = json_report(h, {{"measures", r.measures},
                           {"pairs", r.pairs},
                           {"identical_pairs", r.identical_pairs},
                           {"percent", percent},
                           {"agree", agree},
                           {"comparable", comparable}});
  } else {
    text = h.to_csv();
    for (const auto& n : r.measures) text += "," + n;
    text += '\n';
    for (std::size_t i = 0; i < k; ++i) {
      text += r.measures[i];
      for (std::size_t j = 0; j < k; ++j) {
        const auto p = r.percent(i, j);
        text += "," + (i == j ? std::string("-") : p ? csv_number(*p) : std::string("undefined"));
      }
      text += '\n';
    }
    text += fmt::format("# pairs={} identical_pairs={}\n", r.pairs, r.identical_pairs);
  }
  emit(a.out, text, out);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (r.comparable[i][j] == 0) throw UndefinedResult{};
}

// ---------------------------------------------------------------------------
// grid

struct GridArgs {
  std::string m{"2..10"};
  std::string h{"-1..1:0.2"};
  Output out;
};

void run_grid(const GridArgs& a, std::ostream& out) {
  const std::vector<std::size_t> ms = parse_m_values(a.m);
  const std::vector<double> hs = parse_h_values(a.h);
  GridTable t;
  try {
    t = adj_vs_unb_grid(ms, hs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Header h{"grid", std::nullopt, {}};
  h.config["m"] = ms;
  h.config["h"] = hs;

  std::string text;
  if (a.out.format == "json") {
    json cells = json::array();
    for (const GridCell& c : t.cells) {
      cells.push_back({{"m", c.m},
                       {"h_unbiased", c.h_unbiased},
                       {"p", c.p},
                       {"h_adjusted", c.h_adjusted},
                       {"round_trip", c.round_trip}});
    }
    text = json_report(h, {{"m_values", ms}, {"h_values", hs}, {"cells", cells}});
  } else {
    text = h.to_csv() + "m";
    for (double v : hs) text += "," + csv_number(v);
    text += '\n';
    for (std::size_t r = 0; r < ms.size(); ++r) {
      text += std::to_string(ms[r]);
      for (std::size_t c = 0; c < hs.size(); ++c) text += "," + csv_number(t.at(r, c).h_adjusted);
      text += '\n';
    }
  }
  emit(a.out, text, out);
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  GeneratorConfig config;
  std::string sizes;
  std::string graph_out;
  std::string labels_out;
  Output out;
};

void run_generate(GenerateArgs a, std::ostream& out) {
  if (!a.sizes.empty()) a.config.class_sizes = parse_sizes(a.sizes);
  const bool json_out = std::filesystem::path(a.graph_out).extension() == ".json";
  if (!json_out && a.labels_out.empty()) {
    throw UsageError("an edge-list --graph-out needs --labels-out");
  }
  if (json_out && !a.labels_out.empty()) throw UsageError("JSON output carries its own labels");
  LabeledGraph g = [&] {
    try {
      return generate(a.config);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const NamedGraph ng = with_default_names(std::move(g));
  if (json_out) {
    write_file(a.graph_out, write_json_graph(ng));
  } else {
    write_file(a.graph_out, write_edge_list(ng));
    write_file(a.labels_out, write_labels(ng));
  }

  Header h{"generate", a.config.seed, {}};
  h.config["kind"] = a.config.kind;
  h.config["class_sizes"] = a.config.class_sizes;
  h.config["p"] = a.config.p;
  h.config["p_in"] = a.config.p_in;
  h.config["p_out"] = a.config.p_out;
  h.config["self_loops"] = a.config.self_loops;
  h.config["graph_out"] = a.graph_out;
  h.config["labels_out"] = a.labels_out;
  const LabeledGraph& gg = ng.graph;
  std::string text;
  if (a.out.format == "json") {
    text = json_report(h, {{"n", gg.node_count()}, {"edges", gg.edge_count()},
                           {"m", gg.class_count()}});
  } else {
    text = h.to_csv() +
           fmt::format("n,edges,m\n{},{},{}\n", gg.node_count(), gg.edge_count(), gg.class_count());
  }
  emit(a.out, text, out);
}

// ---------------------------------------------------------------------------
// directed-witness

struct WitnessArgs {
  std::string name{"all"};
  Output out;
};

std::string rational_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : fmt::format("{}/{}", r.numerator(), r.denominator());
}

void run_witness(const WitnessArgs& a, std::ostream& out) {
  std::vector<ContradictionWitness> ws;
  if (a.name == "all" || a.name == "const-vs-min") ws.push_back(witness_const_vs_min());
  if (a.name == "all" || a.name == "const-vs-hetero") ws.push_back(witness_const_vs_hetero());

  Header h{"directed-witness", std::nullopt, {{"name", a.name}}};
  std::string text;
  if (a.out.format == "json") {
    json list = json::array();
    for (const auto& w : ws) {
      json mats = json::object();
      for (const auto& [name, m] : w.matrices) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
          json row = json::array();
          for (std::size_t j = 0; j < m.size(); ++j) row.push_back(rational_string(m(i, j)));
          rows.push_back(row);
        }
        mats[name] = rows;
      }
      json facts = json::array();
      for (const auto& f : w.facts) facts.push_back({{"statement", f.statement}, {"holds", f.holds}});
      list.push_back({{"name", w.name},
                      {"matrices", mats},
                      {"facts", facts},
                      {"consequence", w.consequence},
                      {"verified", w.all_hold()}});
    }
    text = json_report(h, {{"witnesses", list}});
  } else {
    text = h.to_csv() + "witness,fact,holds\n";
    for (const auto& w : ws)
      for (const auto& f : w.facts) {
        text += fmt::format("{},\"{}\",{}\n", w.name, f.statement, f.holds ? "true" : "false");
      }
  }
  emit(a.out, text, out);
  for (const auto& w : ws)
    if (!w.all_hold()) throw UndefinedResult{};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string csv_number(double v) {
  std::string s = fmt::format("{:.4f}", v);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homophily measures for labelled graphs", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "homophily values of one or more graphs");
  c->add_option("--graph,-g", compute.graphs, "edge list or .json graph (repeatable)")->required();
  c->add_option("--labels,-l", compute.labels, "label file for each edge-list graph, in order");
  c->add_option("--measures", compute.measures, "comma-separated measure names")
      ->capture_default_str();
  c->add_option("--alpha", compute.alpha, "alpha for a bare unbiased-alpha")->capture_default_str();
  add_preprocess_flags(c, compute.pre);
  add_output_options(c, compute.out);

  PropertiesArgs props;
  auto* p = app.add_subcommand("properties", "property profile of a measure");
  p->add_option("measure", props.measure, "measure name")->required();
  p->add_option("--trials", props.trials, "random trials per check")->capture_default_str();
  p->add_option("--seed", props.seed, "master seed")->capture_default_str();
  p->add_option("--alpha", props.alpha, "alpha for a bare unbiased-alpha")->capture_default_str();
  p->add_option("--max-violations", props.max_violations,
                "random violations listed per check (pinned witnesses are always listed)")
      ->capture_default_str();
  add_output_options(p, props.out);

  AgreeArgs agree;
  auto* g = app.add_subcommand("agree", "pairwise agreement of measures over graph pairs");
  g->add_option("--pairs", agree.pairs, "number of pairs")->capture_default_str();
  g->add_option("--seed", agree.seed, "master seed")->capture_default_str();
  g->add_option("--measures", agree.measures, "comma-separated measure names")
      ->capture_default_str();
  g->add_option("--alpha", agree.alpha, "alpha for a bare unbiased-alpha")->capture_default_str();
  g->add_option("--tie-mode", agree.tie_mode, "trichotomy or strict")
      ->check(CLI::IsMember({"trichotomy", "strict"}))
      ->capture_default_str();
  g->add_option("--corpus", agree.corpus,
                "directory of graphs (*.json, or *.edges with *.labels); default: synthetic");
  add_preprocess_flags(g, agree.pre);
  add_output_options(g, agree.out);

  GridArgs grid;
  auto* r = app.add_subcommand("grid", "adjusted homophily at given unbiased homophily values");
  // "-h" would clash with --h.
  r->set_help_flag("--help", "Print this help message and exit");
  r->add_option("--m", grid.m, "class counts: 'lo..hi' or a comma list")->capture_default_str();
  r->add_option("--h", grid.h, "values: 'lo..hi:step' or a comma list (use --h=...)")
      ->capture_default_str();
  add_output_options(r, grid.out);

  GenerateArgs gen;
  auto* n = app.add_subcommand("generate", "write a random labelled graph");
  n->add_option("--kind", gen.config.kind, "erdos-renyi, sbm, agreement-random, complete-partition")
      ->required()
      ->check(CLI::IsMember({"erdos-renyi", "sbm", "agreement-random", "complete-partition"}));
  n->add_option("--sizes", gen.sizes, "comma-separated class sizes");
  n->add_option("--p", gen.config.p, "edge probability (erdos-renyi)")->capture_default_str();
  n->add_option("--p-in", gen.config.p_in, "intra-class probability (sbm)")->capture_default_str();
  n->add_option("--p-out", gen.config.p_out, "inter-class probability (sbm)")->capture_default_str();
  n->add_flag("--self-loops", gen.config.self_loops, "allow self-loops (erdos-renyi)");
  n->add_option("--seed", gen.config.seed, "seed")->capture_default_str();
  n->add_option("--graph-out", gen.graph_out, "output graph (.json or edge list)")->required();
  n->add_option("--labels-out", gen.labels_out, "output label file for an edge list");
  add_output_options(n, gen.out);

  WitnessArgs wit;
  auto* w = app.add_subcommand("directed-witness", "verify the directed contradiction witnesses");
  w->add_option("--name", wit.name, "all, const-vs-min or const-vs-hetero")
      ->check(CLI::IsMember({"all", "const-vs-min", "const-vs-hetero"}))
      ->capture_default_str();
  add_output_options(w, wit.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) run_compute(compute, out);
    if (p->parsed()) run_properties(props, out);
    if (g->parsed()) run_agree(agree, out);
    if (r->parsed()) run_grid(grid, out);
    if (n->parsed()) run_generate(gen, out);
    if (w->parsed()) run_witness(wit, out);
  } catch (const UndefinedResult&) {
    err << "error: some requested results are undefined\n";
    return kExitUndefined;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DegenerateGraph& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace homophily
