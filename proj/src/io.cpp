#include "homophily/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace homophily {
namespace {

using nlohmann::json;

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

// Splits a line on whitespace, dropping everything from '#' on.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t end = std::min(line.find('#'), line.size());
  while (i < end) {
    while (i < end && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < end && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Arc {
  NodeId u;
  NodeId v;
  double w;
};

// Dense ids in first-appearance order.
class Interner {
 public:
  std::optional<std::size_t> find(const std::string& name) const {
    const auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t intern(const std::string& name) {
    const auto [it, inserted] = ids_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> names_;
};

// A pair joined in both directions keeps only the arcs of its heavier
// direction (the first-listed direction on ties).
std::vector<Arc> collapse_reciprocal(const std::vector<Arc>& arcs) {
  struct PairInfo {
    double forward{0.0};   // weight of arcs with u < v
    double backward{0.0};  // weight of arcs with u > v
    bool forward_first{true};
    bool seen{false};
  };
  std::map<std::pair<NodeId, NodeId>, PairInfo> pairs;
  for (const Arc& a : arcs) {
    if (a.u == a.v) continue;
    PairInfo& p = pairs[{std::min(a.u, a.v), std::max(a.u, a.v)}];
    if (!p.seen) p.forward_first = a.u < a.v;
    p.seen = true;
    (a.u < a.v ? p.forward : p.backward) += a.w;
  }
  std::vector<Arc> out;
  for (const Arc& a : arcs) {
    if (a.u == a.v) {
      out.push_back(a);
      continue;
    }
    const PairInfo& p = pairs.at({std::min(a.u, a.v), std::max(a.u, a.v)});
    const bool keep_forward =
        p.forward == p.backward ? p.forward_first : p.forward > p.backward;
    if ((a.u < a.v) == keep_forward) out.push_back(a);
  }
  return out;
}

NamedGraph assemble(std::vector<ClassId> labels, std::vector<std::string> node_names,
                    std::vector<std::string> class_names, std::vector<Arc> arcs,
                    const ReadOptions& opts) {
  if (opts.undirected) arcs = collapse_reciprocal(arcs);
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const Arc& a : arcs) edges.push_back({a.u, a.v, a.w});
  const std::size_t m = class_names.size();
  LabeledGraph g(std::move(labels), m, std::move(edges));
  return {preprocess(g, opts.preprocess), std::move(node_names), std::move(class_names)};
}

std::string json_key(const json& j, const std::string& file, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError(file, 0, 0, where + ": expected a string or an integer");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_weight(double w) { return fmt::format("{:.17g}", w); }

}  // namespace

ParseError::ParseError(std::string file, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(line == 0 ? fmt::format("{}: {}", file, message)
                                   : fmt::format("{}:{}:{}: {}", file, line, column, message)),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

NamedGraph parse_edge_list(std::istream& edges, std::istream& labels, const ReadOptions& opts,
                           const std::string& edges_name, const std::string& labels_name) {
  Interner nodes, classes;
  std::vector<ClassId> node_labels;
  std::string line;
  for (std::size_t lineno = 1; std::getline(labels, line); ++lineno) {
    const std::vector<Token> t = tokenize(line);
    if (t.empty()) continue;
    if (t.size() != 2) {
      throw ParseError(labels_name, lineno, t.front().column, "expected 'node label'");
    }
    if (nodes.find(t[0].text)) {
      throw ParseError(labels_name, lineno, t[0].column, "node '" + t[0].text + "' labelled twice");
    }
    nodes.intern(t[0].text);
    node_labels.push_back(classes.intern(t[1].text));
  }
  if (node_labels.empty()) throw ParseError(labels_name, 0, 0, "no labelled nodes");

  std::vector<Arc> arcs;
  for (std::size_t lineno = 1; std::getline(edges, line); ++lineno) {
    const std::vector<Token> t = tokenize(line);
    if (t.empty()) continue;
    if (t.size() < 2 || t.size() > 3) {
      throw ParseError(edges_name, lineno, t.front().column, "expected 'u v' or 'u v w'");
    }
    Arc a{0, 0, 1.0};
    for (int k = 0; k < 2; ++k) {
      const auto id = nodes.find(t[k].text);
      if (!id) {
        throw ParseError(edges_name, lineno, t[k].column, "node '" + t[k].text + "' has no label");
      }
      (k == 0 ? a.u : a.v) = *id;
    }
    if (t.size() == 3) {
      const auto w = parse_double(t[2].text);
      if (!w || !std::isfinite(*w)) throw ParseError(edges_name, lineno, t[2].column, "malformed weight");
      if (*w <= 0.0) throw ParseError(edges_name, lineno, t[2].column, "weight must be positive");
      a.w = *w;
    }
    arcs.push_back(a);
  }
  return assemble(std::move(node_labels), nodes.names(), classes.names(), std::move(arcs), opts);
}

NamedGraph parse_json_graph(const std::string& text, const ReadOptions& opts,
                            const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(name, line, column, "malformed JSON");
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError(name, 0, 0, "expected an object with a 'nodes' array");
  }
  Interner nodes, classes;
  if (doc.contains("classes")) {
    if (!doc["classes"].is_array()) throw ParseError(name, 0, 0, "'classes' must be an array");
    for (std::size_t k = 0; k < doc["classes"].size(); ++k) {
      const std::string c = json_key(doc["classes"][k], name, fmt::format("classes[{}]", k));
      if (classes.find(c)) throw ParseError(name, 0, 0, "class '" + c + "' listed twice");
      classes.intern(c);
    }
  }
  const bool fixed_classes = doc.contains("classes");
  std::vector<ClassId> node_labels;
  for (std::size_t k = 0; k < doc["nodes"].size(); ++k) {
    const json& n = doc["nodes"][k];
    const std::string where = fmt::format("nodes[{}]", k);
    if (!n.is_object() || !n.contains("id") || !n.contains("label")) {
      throw ParseError(name, 0, 0, where + ": expected {\"id\", \"label\"}");
    }
    const std::string id = json_key(n["id"], name, where + ".id");
    const std::string label = json_key(n["label"], name, where + ".label");
    if (nodes.find(id)) throw ParseError(name, 0, 0, where + ": node '" + id + "' listed twice");
    if (fixed_classes && !classes.find(label)) {
      throw ParseError(name, 0, 0, where + ": label '" + label + "' is not in 'classes'");
    }
    nodes.intern(id);
    node_labels.push_back(classes.intern(label));
  }
  if (node_labels.empty()) throw ParseError(name, 0, 0, "no nodes");

  std::vector<Arc> arcs;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError(name, 0, 0, "'edges' must be an array");
    for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
      const json& e = doc["edges"][k];
      const std::string where = fmt::format("edges[{}]", k);
      if (!e.is_object() || !e.contains("u") || !e.contains("v")) {
        throw ParseError(name, 0, 0, where + ": expected {\"u\", \"v\"}");
      }
      Arc a{0, 0, 1.0};
      for (const char* end : {"u", "v"}) {
        const std::string id = json_key(e[end], name, where + "." + end);
        const auto found = nodes.find(id);
        if (!found) throw ParseError(name, 0, 0, where + ": node '" + id + "' has no label");
        (end[0] == 'u' ? a.u : a.v) = *found;
      }
      if (e.contains("w")) {
        if (!e["w"].is_number()) throw ParseError(name, 0, 0, where + ".w: expected a number");
        a.w = e["w"].get<double>();
        if (!(a.w > 0.0) || !std::isfinite(a.w)) {
          throw ParseError(name, 0, 0, where + ".w: weight must be positive");
        }
      }
      arcs.push_back(a);
    }
  }
  return assemble(std::move(node_labels), nodes.names(), classes.names(), std::move(arcs), opts);
}

NamedGraph read_graph(const std::filesystem::path& graph,
                      const std::optional<std::filesystem::path>& labels, const ReadOptions& opts) {
  if (graph.extension() == ".json") {
    if (labels) throw ParseError(labels->string(), 0, 0, "JSON graphs carry their own labels");
    return parse_json_graph(read_text(graph), opts, graph.string());
  }
  if (!labels) throw ParseError(graph.string(), 0, 0, "an edge list needs a label file");
  std::istringstream e(read_text(graph));
  std::istringstream l(read_text(*labels));
  return parse_edge_list(e, l, opts, graph.string(), labels->string());
}

std::vector<std::pair<std::string, NamedGraph>> read_corpus(const std::filesystem::path& dir,
                                                            const ReadOptions& opts) {
  if (!std::filesystem::is_directory(dir)) {
    throw ParseError(dir.string(), 0, 0, "not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto& p = entry.path();
    if (p.extension() == ".json") files.push_back(p);
    if (p.extension() == ".edges") {
      auto l = p;
      l.replace_extension(".labels");
      if (std::filesystem::exists(l)) files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, NamedGraph>> out;
  for (const auto& p : files) {
    std::optional<std::filesystem::path> labels;
    if (p.extension() == ".edges") labels = std::filesystem::path(p).replace_extension(".labels");
    out.emplace_back(p.filename().string(), read_graph(p, labels, opts));
  }
  return out;
}

NamedGraph with_default_names(LabeledGraph g) {
  std::vector<std::string> nodes, classes;
  for (std::size_t v = 0; v < g.node_count(); ++v) nodes.push_back(std::to_string(v + 1));
  for (std::size_t k = 0; k < g.class_count(); ++k) classes.push_back(std::to_string(k + 1));
  return {std::move(g), std::move(nodes), std::move(classes)};
}

std::string write_edge_list(const NamedGraph& g) {
  std::string out;
  for (const Edge& e : g.graph.edges()) {
    out += g.node_names.at(e.u) + ' ' + g.node_names.at(e.v);
    if (e.weight != 1.0) out += ' ' + format_weight(e.weight);
    out += '\n';
  }
  return out;
}

std::string write_labels(const NamedGraph& g) {
  std::string out;
  for (std::size_t v = 0; v < g.graph.node_count(); ++v) {
    out += g.node_names.at(v) + ' ' + g.class_names.at(g.graph.label(v)) + '\n';
  }
  return out;
}

std::string write_json_graph(const NamedGraph& g) {
  json doc;
  doc["classes"] = g.class_names;
  doc["nodes"] = json::array();
  for (std::size_t v = 0; v < g.graph.node_count(); ++v) {
    doc["nodes"].push_back({{"id", g.node_names.at(v)}, {"label", g.class_names.at(g.graph.label(v))}});
  }
  doc["edges"] = json::array();
  for (const Edge& e : g.graph.edges()) {
    json je = {{"u", g.node_names.at(e.u)}, {"v", g.node_names.at(e.v)}};
    if (e.weight != 1.0) je["w"] = e.weight;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(1) + '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace homophily
