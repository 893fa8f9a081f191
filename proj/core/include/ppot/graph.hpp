#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ppot {

using VertexId = std::size_t;
using EdgeId = std::size_t;
using VertexSet = std::vector<VertexId>;

/// Undirected edge, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  VertexId other(VertexId w) const noexcept { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  VertexId vertex;
  EdgeId edge;
};

/// Finite, simple, connected, undirected graph with dense vertex indices.
///
/// Adjacency is stored in compressed form; each vertex's neighbors are sorted
/// by vertex index so that every traversal is deterministic.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws LoopEdge, DuplicateEdge, InvalidIndex or
  /// Disconnected.
  Graph(std::size_t vertex_count, std::vector<Edge> edges,
        std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Neighbor> neighbors(VertexId v) const noexcept {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const noexcept;
  bool adjacent(VertexId u, VertexId v) const noexcept { return find_edge(u, v).has_value(); }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(VertexId v) const { return labels_.at(v); }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<std::string> labels_;
};

/// Builds a graph from a list of vertex pairs; the vertex count is one more
/// than the largest index, and every index below it must occur.
Graph build_graph(std::span<const std::pair<VertexId, VertexId>> edge_list);

/// Strictly positive weight per edge, indexed like Graph::edges().
class EdgeMetric {
 public:
  EdgeMetric() = default;
  explicit EdgeMetric(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](EdgeId e) const { return values_[e]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// One finite real per vertex.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit VertexFunction(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](VertexId v) { return values_[v]; }
  double operator[](VertexId v) const { return values_[v]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

 private:
  std::vector<double> values_;
};

struct Path {
  std::vector<VertexId> vertices;

  std::size_t edge_count() const noexcept {
    return vertices.empty() ? 0 : vertices.size() - 1;
  }
};

EdgeMetric natural_metric(const Graph& g);

/// Edge ids along a path. Throws InvalidPath when consecutive vertices are not
/// adjacent or an edge repeats.
std::vector<EdgeId> path_edges(const Graph& g, const Path& path);
double path_length(const Graph& g, const EdgeMetric& m, const Path& path);
double path_length(const Graph& g, std::span<const double> weights, const Path& path);

/// Multi-source shortest paths over nonnegative edge weights.
struct ShortestPaths {
  std::vector<double> distance;
  /// Predecessor vertex on a shortest path, or npos for sources and unreached.
  std::vector<VertexId> parent;

  static constexpr VertexId npos = static_cast<VertexId>(-1);

  /// Path from the nearest source to `target`, in source-to-target order.
  Path path_to(VertexId target) const;
};

/// Dijkstra from a set of sources. Ties are broken by vertex index: vertices
/// are settled in (distance, index) order and a parent is only replaced on a
/// strict improvement.
ShortestPaths shortest_paths(const Graph& g, std::span<const double> weights,
                             std::span<const VertexId> sources);

double metric_distance(const Graph& g, const EdgeMetric& m, VertexId u, VertexId v);

/// Hop distances from `center`.
std::vector<std::size_t> hop_distances(const Graph& g, VertexId center);
VertexSet ball(const Graph& g, VertexId center, std::size_t radius);
VertexSet sphere(const Graph& g, VertexId center, std::size_t radius);

/// |f(v) - f(u)| / m(e) per edge.
std::vector<double> gradient_abs(const Graph& g, const VertexFunction& f, const EdgeMetric& m);

/// Subgraph induced by `vertices` (sorted, unique, inducing a connected
/// subgraph). `to_parent[i]` is the host vertex of local vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> to_parent;
  /// Host vertex to local vertex, npos when not included.
  std::vector<VertexId> to_local;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// Sorted, deduplicated copy.
VertexSet normalize_set(VertexSet s);

}  // namespace ppot
