#pragma once

// Graph files.
//
// Edge list: one edge per line, "u v" or "u v w", whitespace separated;
// '#' starts a comment. Node names are arbitrary tokens. A companion label
// file has lines "v label". Nodes and classes get dense ids in order of
// first appearance in the label file; labelled nodes without edges are kept
// as isolated nodes.
//
// JSON: {"nodes": [{"id": .., "label": ..}], "edges": [{"u": .., "v": .., "w": ..}],
//        "classes": [..]}. Ids and labels may be strings or integers; "w"
// and "classes" are optional. "classes" fixes the class order and may name
// classes no node carries.

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homophily/graph.hpp"

namespace homophily {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column, const std::string& message);

  const std::string& file() const noexcept { return file_; }
  /// 1-based; 0 when the error is not tied to a position.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

struct ReadOptions {
  /// The edges are arcs of a directed graph: a pair joined in both
  /// directions becomes one undirected edge (the direction carrying more
  /// weight is kept; ties keep the direction listed first).
  bool undirected{false};
  PreprocessOptions preprocess;
};

struct NamedGraph {
  LabeledGraph graph;
  std::vector<std::string> node_names;
  std::vector<std::string> class_names;
};

NamedGraph parse_edge_list(std::istream& edges, std::istream& labels,
                           const ReadOptions& opts = {}, const std::string& edges_name = "<edges>",
                           const std::string& labels_name = "<labels>");

NamedGraph parse_json_graph(const std::string& text, const ReadOptions& opts = {},
                            const std::string& name = "<json>");

/// Files ending in .json are read as JSON (labels must be absent);
/// anything else is an edge list and needs a label file. Throws ParseError,
/// including for unreadable files.
NamedGraph read_graph(const std::filesystem::path& graph,
                      const std::optional<std::filesystem::path>& labels,
                      const ReadOptions& opts = {});

/// All graphs in a directory: every *.json file, and every *.edges file with
/// a sibling *.labels file. Sorted by file name. Returns names alongside.
std::vector<std::pair<std::string, NamedGraph>> read_corpus(const std::filesystem::path& dir,
                                                            const ReadOptions& opts = {});

/// Gives nodes and classes the names "1".."n" and "1".."m".
NamedGraph with_default_names(LabeledGraph g);

/// "u v" per edge, with " w" when the weight is not 1 (printed with 17
/// significant digits).
std::string write_edge_list(const NamedGraph& g);
/// "v label" per node.
std::string write_labels(const NamedGraph& g);
/// The JSON form; "classes" is always written.
std::string write_json_graph(const NamedGraph& g);

/// Writes text to a file, throwing std::runtime_error on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace homophily
