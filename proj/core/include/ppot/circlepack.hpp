#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ppot/generators.hpp"
#include "ppot/graph.hpp"
#include "ppot/io.hpp"
#include "ppot/packing.hpp"

namespace ppot {

/// A triangulated disk: every bounded face is a triangle and the outer face
/// is bounded by a simple cycle.
struct Triangulation {
  Graph graph;
  VertexSet boundary;
  /// Consistently oriented: every interior edge appears once in each
  /// direction.
  std::vector<std::array<VertexId, 3>> faces;
  std::vector<char> on_boundary;
  /// Neighbors of each vertex in face order: a cycle for interior vertices,
  /// a fan from one boundary neighbor to the other for boundary vertices.
  std::vector<std::vector<VertexId>> flower;
};

/// Validates and orients. Without explicit faces they are taken to be the
/// 3-cliques of the graph, minus the boundary when it is a triangle. Throws
/// NotTriangulation on any failure (boundary not a simple cycle, edges in the
/// wrong number of faces, Euler relation, vertex links not a cycle or fan).
Triangulation make_triangulation(Graph graph, VertexSet boundary,
                                 std::optional<std::vector<std::array<VertexId, 3>>> faces = std::nullopt);

/// From a graph file with a `boundary:` directive and optional `face:` lines.
Triangulation triangulation_from_file(const GraphFile& file);

/// From the triangulated-disk generator.
Triangulation triangulation_from_disk(const GeneratedGraph& disk);

/// Angle at a circle of radius r_u in the triangle formed with tangent
/// neighbors r_v and r_w.
double tangency_angle(double r_u, double r_v, double r_w);

/// Sum of tangency angles at a circle of radius r over consecutive pairs of
/// the neighbor cycle (closed). Strictly decreasing in r.
double angle_sum(double r, std::span<const double> cycle);

struct CirclePacking {
  Packing packing;
  std::vector<double> radii;
  /// max over interior vertices of |angle sum - 2 pi|
  double angle_residual = 0.0;
  /// max over edges of | |z_u - z_v| - (r_u + r_v) | / (r_u + r_v)
  double tangency_residual = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

struct PackConfig {
  double tolerance = 1e-8;
  std::size_t max_sweeps = 200000;
};

/// Boundary-value packing: boundary circles get the given radii (aligned with
/// t.boundary), interior radii are adjusted until every interior angle sum is
/// 2 pi, then centers are laid out face by face. Vertex i of the triangulation
/// is ball i. Vertex 0 is placed at the origin and its first flower neighbor
/// on the positive x-axis. On hitting max_sweeps the best iterate is returned
/// with converged = false.
CirclePacking pack_disk(const Triangulation& t, std::span<const double> boundary_radii, const PackConfig& cfg = {});

}  // namespace ppot
