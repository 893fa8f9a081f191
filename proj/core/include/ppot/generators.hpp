#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ppot/graph.hpp"

namespace ppot {

enum class Family { Path, Lattice, Tree, Product, Tessellation, Disk };

std::string_view to_string(Family f);

/// Maximum vertex count a generator may produce. Read once from the
/// PPOT_VERTEX_BUDGET environment variable; defaults to 4'000'000.
std::size_t default_vertex_budget();

/// A generated graph plus the family-specific coordinates the generators
/// attach to each vertex.
///
/// Coordinates by family:
///   lattice       integer lattice point
///   tree          (depth, index within its layer)
///   product       (vertex of first factor, vertex of second factor)
///   tessellation  (ring index)
///   disk          axial hexagonal coordinates (q, r)
///   path          (position)
struct GeneratedGraph {
  Graph graph;
  Family family = Family::Path;
  std::vector<std::pair<std::string, long>> params;
  std::vector<std::vector<long>> coords;
  VertexId center = 0;
  /// Lattice: box faces; tree: leaves; tessellation: outermost ring;
  /// disk: boundary cycle in counterclockwise order.
  VertexSet boundary;
  /// Disk: counterclockwise triangles. Tessellation: p-gons of the patch.
  std::vector<std::vector<VertexId>> faces;
  /// Product only: integer position along a path second factor, centered at 0.
  std::optional<std::vector<long>> z_coordinate;
  std::size_t second_factor_size = 0;

  long param(std::string_view name) const;
};

GeneratedGraph path_graph(std::size_t vertex_count, std::size_t budget = default_vertex_budget());

/// {-R..R}^d with nearest-neighbour edges. Vertices in lexicographic order.
GeneratedGraph lattice_box(int dimension, long radius, std::size_t budget = default_vertex_budget());

/// Rooted tree of the given depth. The root has `branching` children; every
/// other internal vertex has max(branching - 1, 2) children. So branching 2 is
/// the rooted binary tree (root degree 2, internal degree 3) and branching
/// b >= 3 is the b-regular tree.
GeneratedGraph regular_tree(int branching, int depth, std::size_t budget = default_vertex_budget());

/// Cartesian product g x h: vertex (a, x) has index a * |V(h)| + x. When h is a
/// path its positions are recorded as a centered Z-coordinate.
GeneratedGraph cartesian_product(const Graph& g, const Graph& h, std::size_t budget = default_vertex_budget());

/// tree(branching, depth) x {-half_length..half_length}.
GeneratedGraph tree_times_segment(int branching, int depth, long half_length,
                                  std::size_t budget = default_vertex_budget());

/// f o tau, where tau shifts the Z-coordinate by +1. The last column (z = L)
/// keeps its own values since its image falls off the segment.
VertexFunction z_shift(const GeneratedGraph& product, const VertexFunction& f);

/// Vertex graph of the regular {p,q} tiling of the hyperbolic plane, grown
/// ring by ring around a central vertex. Purely combinatorial.
GeneratedGraph hyperbolic_tessellation(int p, int q, int layers, std::size_t budget = default_vertex_budget());

/// Hexagonal-lattice disk of the given number of rings; all interior faces are
/// triangles and interior vertices have degree 6.
GeneratedGraph triangulated_disk(int layers, std::size_t budget = default_vertex_budget());

/// A named family scaled by one integer radius; used for exhaustion curves.
struct FamilySpec {
  Family family = Family::Lattice;
  int dimension = 2;   // lattice
  int branching = 2;   // tree, product
  int p = 4, q = 5;    // tessellation

  /// Parses "lattice:d=2", "tree:b=2", "tree-x-z:b=3", "tessellation:p=4,q=5",
  /// "disk".
  static FamilySpec parse(const std::string& text);
  std::string name() const;
};

/// ball(R) around the family's base vertex, as an induced graph.
struct Exhaustion {
  Graph graph;
  VertexId root = 0;
  VertexSet sphere;      // hop distance exactly R
  VertexSet inner_ball;  // hop distance <= R/4
  std::vector<std::vector<double>> coords;
  std::vector<std::size_t> hop;
};

Exhaustion build_exhaustion(const FamilySpec& spec, long radius, std::size_t budget = default_vertex_budget());

}  // namespace ppot
