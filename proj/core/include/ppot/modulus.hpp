#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "ppot/capacity.hpp"
#include "ppot/generators.hpp"
#include "ppot/graph.hpp"

namespace ppot {

/// Either an explicit list of paths or every path from A to B. Connector
/// families are never enumerated; constraint generation queries them through
/// a shortest-path oracle.
class PathFamily {
 public:
  enum class Kind { Explicit, Connector };

  static PathFamily explicit_paths(std::vector<Path> paths);
  /// Throws InvalidArgument when A or B is empty, Overlap when they meet.
  static PathFamily connector(VertexSet a, VertexSet b);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Path>& paths() const noexcept { return paths_; }
  const VertexSet& sources() const noexcept { return sources_; }
  const VertexSet& targets() const noexcept { return targets_; }

 private:
  Kind kind_ = Kind::Explicit;
  std::vector<Path> paths_;
  VertexSet sources_, targets_;
};

struct ModulusConfig {
  double p = 2.0;
  /// Stop when every family path has length >= 1 - tolerance.
  double tolerance = 1e-6;
  /// Coordinate ascent stops when every active constraint is tight (or slack
  /// with zero multiplier) within this; it bounds the duality gap.
  double inner_tolerance = 1e-9;
  std::size_t max_rounds = 100000;
  std::size_t max_inner_sweeps = 20000;
  /// Violated paths added per round for connector families. Candidates are
  /// the shortest paths to each target, shortest first.
  std::size_t paths_per_round = 8;

  void validate() const;
};

struct ModulusResult {
  /// sum_e m(e)^p for the returned density, which is feasible: every family
  /// path has m-length >= 1.
  double value = 0.0;
  /// Lagrangian dual bound from the multipliers; value - lower_bound is the
  /// certified gap.
  double lower_bound = 0.0;
  /// Nonnegative edge density; edges outside every active path carry 0.
  std::vector<double> density;
  std::vector<Path> active_paths;
  std::vector<double> multipliers;
  /// Shortest family path under the density before the final normalization.
  double shortest_length = 0.0;
  std::size_t rounds = 0;
  std::size_t sweeps = 0;
  bool converged = false;
};

/// Minimizes sum_e m(e)^p over densities m >= 0 with length_m(gamma) >= 1 for
/// every gamma in the family. Throws NoPath when no source reaches a target.
ModulusResult p_modulus(const Graph& g, const PathFamily& family, const ModulusConfig& cfg);

/// 1 / modulus; infinity for a family of modulus zero.
double extremal_length(const Graph& g, const PathFamily& family, const ModulusConfig& cfg);

struct NullTrendThresholds {
  /// Null when the last modulus is below this fraction of the first ...
  double null_ratio = 1e-3;
  /// ... or the sequence classifies as parabolic under these.
  TrendThresholds trend;
};

struct NullTrend {
  std::string family;
  double p = 2.0;
  std::vector<long> radii;
  std::vector<double> modulus;
  std::vector<double> gap;
  TrendFit fit;
  bool null_trend = false;
};

/// Modulus of the paths from the root to sphere(R) on each ball(R).
NullTrend null_family_trend(const FamilySpec& family, const std::vector<long>& radii, const ModulusConfig& cfg,
                            const NullTrendThresholds& thresholds = {});

/// Boundary point stand-ins for resolving checks.
struct EuclideanAnchor {
  std::vector<double> point;
  /// One position per vertex (packing centers).
  std::vector<std::vector<double>> positions;
};

struct VertexAnchor {
  VertexSet anchor;
};

struct BoundaryProxy {
  std::variant<EuclideanAnchor, VertexAnchor> anchor;
  /// Strictly decreasing, positive.
  std::vector<double> scales;
  /// Fixed source set of the connector families.
  VertexSet far_set;
};

struct ResolveResult {
  std::vector<double> scales;
  std::vector<double> modulus;
  /// value - lower_bound per scale
  std::vector<double> gap;
  std::vector<std::size_t> target_size;
  /// Strictly decreasing moduli with final <= max_final_ratio * initial.
  bool resolving_trend = false;
  double final_ratio = 0.0;
};

/// For each scale s, the modulus of the paths from the far set to the
/// vertices within distance s of the anchor (d_m for a vertex anchor, center
/// distance for a Euclidean one). Throws EmptyTarget when the smallest scale
/// captures no vertex and Overlap when a target meets the far set.
ResolveResult resolving_check(const Graph& g, const EdgeMetric& m, const BoundaryProxy& proxy,
                              const ModulusConfig& cfg, double max_final_ratio = 0.1);

/// f(v) = d_m(anchor, v). |df(e)| <= m(e) on every edge.
VertexFunction boundary_distance_function(const Graph& g, const EdgeMetric& m, const VertexSet& anchor);

}  // namespace ppot
