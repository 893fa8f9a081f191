#include "ppot/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_set>

#include "ppot/error.hpp"

namespace ppot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::NotAProduct: return "NotAProduct";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::EmptyTarget: return "EmptyTarget";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ZeroGradient: return "ZeroGradient";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::BadRadii: return "BadRadii";
    case ErrorCode::PathMismatch: return "PathMismatch";
    case ErrorCode::NotTriangulation: return "NotTriangulation";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : vertex_count_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (vertex_count_ == 0) throw Error(ErrorCode::InvalidArgument, "graph needs at least one vertex");
  if (!labels_.empty() && labels_.size() != vertex_count_)
    throw Error(ErrorCode::InvalidArgument, "label count does not match vertex count");

  std::vector<std::size_t> degree(vertex_count_, 0);
  for (auto& e : edges_) {
    if (e.u >= vertex_count_ || e.v >= vertex_count_)
      throw Error(ErrorCode::InvalidIndex, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    ++degree[e.u];
    ++degree[e.v];
  }

  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[fill[e.u]++] = {e.v, id};
    adjacency_[fill[e.v]++] = {e.u, id};
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    for (auto it = first; it + 1 < last; ++it) {
      if (it->vertex == (it + 1)->vertex)
        throw Error(ErrorCode::DuplicateEdge,
                    "edge {" + std::to_string(v) + "," + std::to_string(it->vertex) + "} repeated");
    }
  }

  // Connectivity.
  std::vector<char> seen(vertex_count_, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const auto& nb : neighbors(v)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  if (reached != vertex_count_)
    throw Error(ErrorCode::Disconnected, std::to_string(vertex_count_ - reached) +
                                             " vertices unreachable from vertex 0");
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const noexcept {
  if (u >= vertex_count_ || v >= vertex_count_) return std::nullopt;
  auto nbs = neighbors(u);
  auto it = std::lower_bound(nbs.begin(), nbs.end(), v,
                             [](const Neighbor& a, VertexId x) { return a.vertex < x; });
  if (it != nbs.end() && it->vertex == v) return it->edge;
  return std::nullopt;
}

Graph build_graph(std::span<const std::pair<VertexId, VertexId>> edge_list) {
  if (edge_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty edge list");
  VertexId max_index = 0;
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (auto [u, v] : edge_list) {
    if (u == v) throw Error(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(u));
    max_index = std::max({max_index, u, v});
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  const std::size_t n = max_index + 1;
  std::vector<char> used(n, 0);
  for (const auto& e : edges) used[e.u] = used[e.v] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end())
    throw Error(ErrorCode::InvalidIndex, "vertex indices are not dense");
  return Graph(n, std::move(edges));
}

EdgeMetric::EdgeMetric(std::vector<double> values) : values_(std::move(values)) {
  for (double x : values_) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw Error(ErrorCode::InvalidArgument, "edge metric values must be finite and positive");
  }
}

VertexFunction::VertexFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double x : values_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "vertex function values must be finite");
  }
}

EdgeMetric natural_metric(const Graph& g) { return EdgeMetric(std::vector<double>(g.edge_count(), 1.0)); }

std::vector<EdgeId> path_edges(const Graph& g, const Path& path) {
  std::vector<EdgeId> out;
  if (path.vertices.empty()) throw Error(ErrorCode::InvalidPath, "empty path");
  for (VertexId v : path.vertices) {
    if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidPath, "vertex out of range");
  }
  out.reserve(path.edge_count());
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    auto e = g.find_edge(path.vertices[i], path.vertices[i + 1]);
    if (!e) {
      throw Error(ErrorCode::InvalidPath, "vertices " + std::to_string(path.vertices[i]) + " and " +
                                              std::to_string(path.vertices[i + 1]) + " not adjacent");
    }
    out.push_back(*e);
  }
  std::vector<EdgeId> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidPath, "path repeats an edge");
  return out;
}

double path_length(const Graph& g, std::span<const double> weights, const Path& path) {
  double total = 0.0;
  for (EdgeId e : path_edges(g, path)) total += weights[e];
  return total;
}

double path_length(const Graph& g, const EdgeMetric& m, const Path& path) {
  return path_length(g, m.values(), path);
}

Path ShortestPaths::path_to(VertexId target) const {
  Path p;
  if (!std::isfinite(distance.at(target))) return p;
  for (VertexId v = target; v != npos; v = parent[v]) p.vertices.push_back(v);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

ShortestPaths shortest_paths(const Graph& g, std::span<const double> weights,
                             std::span<const VertexId> sources) {
  const std::size_t n = g.vertex_count();
  ShortestPaths sp;
  sp.distance.assign(n, std::numeric_limits<double>::infinity());
  sp.parent.assign(n, ShortestPaths::npos);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (VertexId s : sources) {
    if (s >= n) throw Error(ErrorCode::InvalidIndex, "source out of range");
    sp.distance[s] = 0.0;
    heap.emplace(0.0, s);
  }
  std::vector<char> done(n, 0);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v] || d > sp.distance[v]) continue;
    done[v] = 1;
    for (const auto& nb : g.neighbors(v)) {
      if (done[nb.vertex]) continue;
      double cand = d + weights[nb.edge];
      if (cand < sp.distance[nb.vertex]) {
        sp.distance[nb.vertex] = cand;
        sp.parent[nb.vertex] = v;
        heap.emplace(cand, nb.vertex);
      }
    }
  }
  return sp;
}

double metric_distance(const Graph& g, const EdgeMetric& m, VertexId u, VertexId v) {
  if (u >= g.vertex_count() || v >= g.vertex_count())
    throw Error(ErrorCode::InvalidIndex, "vertex out of range");
  if (u == v) return 0.0;
  const VertexId src[] = {u};
  return shortest_paths(g, m.values(), src).distance[v];
}

std::vector<std::size_t> hop_distances(const Graph& g, VertexId center) {
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), unreached);
  if (center >= g.vertex_count()) throw Error(ErrorCode::InvalidIndex, "center out of range");
  std::queue<VertexId> q;
  dist[center] = 0;
  q.push(center);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (const auto& nb : g.neighbors(v)) {
      if (dist[nb.vertex] == unreached) {
        dist[nb.vertex] = dist[v] + 1;
        q.push(nb.vertex);
      }
    }
  }
  return dist;
}

VertexSet ball(const Graph& g, VertexId center, std::size_t radius) {
  auto dist = hop_distances(g, center);
  VertexSet out;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] <= radius) out.push_back(v);
  return out;
}

VertexSet sphere(const Graph& g, VertexId center, std::size_t radius) {
  auto dist = hop_distances(g, center);
  VertexSet out;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] == radius) out.push_back(v);
  return out;
}

std::vector<double> gradient_abs(const Graph& g, const VertexFunction& f, const EdgeMetric& m) {
  if (f.size() != g.vertex_count() || m.size() != g.edge_count())
    throw Error(ErrorCode::GraphMismatch, "function or metric size does not match graph");
  std::vector<double> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    out[e] = std::abs(f[ed.v] - f[ed.u]) / m[e];
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  InducedSubgraph out;
  out.to_local.assign(g.vertex_count(), ShortestPaths::npos);
  out.to_parent.assign(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.vertex_count()) throw Error(ErrorCode::InvalidIndex, "vertex out of range");
    if (out.to_local[vertices[i]] != ShortestPaths::npos)
      throw Error(ErrorCode::InvalidArgument, "repeated vertex in induced set");
    out.to_local[vertices[i]] = i;
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    VertexId a = out.to_local[e.u], b = out.to_local[e.v];
    if (a != ShortestPaths::npos && b != ShortestPaths::npos) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(vertices.size());
    for (VertexId v : vertices) labels.push_back(g.label(v));
  }
  out.graph = Graph(vertices.size(), std::move(edges), std::move(labels));
  return out;
}

VertexSet normalize_set(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace ppot
