#include "ppot/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ppot/error.hpp"

namespace ppot {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) throw Error(ErrorCode::Parse, "bad number '" + text + "'");
  return value;
}

std::size_t parse_index(const std::string& text) {
  std::size_t value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::Parse, "bad index '" + text + "'");
  return value;
}

GraphFile read_graph(std::istream& in) {
  std::string line;
  std::size_t n = 0, m = 0;
  bool header = false;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::size_t weighted = 0;
  std::vector<std::string> labels;
  std::multimap<std::string, std::vector<std::string>> directives;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      auto toks = split_ws(t.substr(1));
      if (toks.size() >= 2 && toks[0] == "label" && header) {
        std::size_t v = parse_index(toks[1]);
        if (v >= n) throw Error(ErrorCode::Parse, "label vertex out of range at line " + std::to_string(lineno));
        if (labels.empty()) labels.assign(n, std::string{});
        auto pos = t.find(toks[1], t.find("label") + 5) + toks[1].size();
        labels[v] = trim(t.substr(pos));
      }
      continue;
    }
    if (!header) {
      auto toks = split_ws(t);
      if (toks.size() != 3 || toks[0] != "graph")
        throw Error(ErrorCode::Parse, "expected 'graph <n> <m>' header");
      n = parse_index(toks[1]);
      m = parse_index(toks[2]);
      header = true;
      continue;
    }
    if (auto colon = t.find(':'); colon != std::string::npos) {
      directives.emplace(trim(t.substr(0, colon)), split_ws(t.substr(colon + 1)));
      continue;
    }
    auto toks = split_ws(t);
    if (toks.size() != 2 && toks.size() != 3)
      throw Error(ErrorCode::Parse, "bad edge line " + std::to_string(lineno));
    edges.push_back({parse_index(toks[0]), parse_index(toks[1])});
    if (toks.size() == 3) {
      weights.push_back(parse_double(toks[2]));
      ++weighted;
    } else {
      weights.push_back(0.0);
    }
  }
  if (!header) throw Error(ErrorCode::Parse, "missing header");
  if (edges.size() != m)
    throw Error(ErrorCode::Parse, "header declares " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
  if (weighted != 0 && weighted != edges.size())
    throw Error(ErrorCode::Parse, "metric values must be given for all edges or none");
  if (!labels.empty()) {
    bool any = false;
    for (auto& l : labels) any = any || !l.empty();
    if (!any) labels.clear();
  }

  GraphFile out{Graph(n, std::move(edges), std::move(labels)), std::nullopt, std::move(directives)};
  if (weighted) out.metric = EdgeMetric(std::move(weights));
  return out;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const GraphWriteOptions& opts) {
  out << "graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  if (opts.labels && g.has_labels()) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) out << "# label " << v << ' ' << g.label(v) << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    out << ed.u << ' ' << ed.v;
    if (opts.metric) out << ' ' << format_double((*opts.metric)[e]);
    out << '\n';
  }
  for (const auto& [key, vals] : opts.directives) {
    out << key << ':';
    for (const auto& v : vals) out << ' ' << v;
    out << '\n';
  }
}

std::vector<std::pair<VertexId, double>> read_vertex_values(std::istream& in) {
  std::vector<std::pair<VertexId, double>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto toks = split_ws(t);
    if (toks.size() != 2) throw Error(ErrorCode::Parse, "expected 'vertex value', got '" + t + "'");
    out.emplace_back(parse_index(toks[0]), parse_double(toks[1]));
  }
  return out;
}

VertexFunction read_vertex_function(std::istream& in, std::size_t vertex_count) {
  std::vector<double> values(vertex_count, 0.0);
  std::vector<char> seen(vertex_count, 0);
  for (auto [v, x] : read_vertex_values(in)) {
    if (v >= vertex_count) throw Error(ErrorCode::Parse, "vertex out of range");
    if (seen[v]) throw Error(ErrorCode::Parse, "vertex " + std::to_string(v) + " given twice");
    seen[v] = 1;
    values[v] = x;
  }
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (!seen[v]) throw Error(ErrorCode::Parse, "vertex " + std::to_string(v) + " missing");
  return VertexFunction(std::move(values));
}

void write_vertex_function(std::ostream& out, const VertexFunction& f) {
  for (VertexId v = 0; v < f.size(); ++v) out << v << ' ' << format_double(f[v]) << '\n';
}

}  // namespace ppot
