#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppot/graph.hpp"

namespace ppot {

/// Parsed contents of a graph text file.
///
///     graph <n_vertices> <n_edges>
///     # label <v> <text>        (optional vertex labels)
///     u v [m]                   (one line per edge, optional metric value)
///     key: values...            (optional directives, e.g. `boundary:`)
///
/// Other `#` lines are comments. Metric values are written in the shortest
/// decimal form that round-trips exactly.
struct GraphFile {
  Graph graph;
  std::optional<EdgeMetric> metric;
  /// Directive lines in file order, keyed by the text before the colon.
  std::multimap<std::string, std::vector<std::string>> directives;
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);

struct GraphWriteOptions {
  const EdgeMetric* metric = nullptr;
  bool labels = true;
  std::vector<std::pair<std::string, std::vector<std::string>>> directives;
};

void write_graph(std::ostream& out, const Graph& g, const GraphWriteOptions& opts = {});

/// `vertex value` lines. Missing vertices are an error; `#` comments allowed.
VertexFunction read_vertex_function(std::istream& in, std::size_t vertex_count);
/// Reads `vertex value` pairs without requiring every vertex (boundary data).
std::vector<std::pair<VertexId, double>> read_vertex_values(std::istream& in);
void write_vertex_function(std::ostream& out, const VertexFunction& f);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);
double parse_double(const std::string& text);
std::size_t parse_index(const std::string& text);

}  // namespace ppot
