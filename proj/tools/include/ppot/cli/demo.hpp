#pragma once

#include <cstddef>
#include <vector>

#include "ppot/circlepack.hpp"
#include "ppot/generators.hpp"
#include "ppot/modulus.hpp"
#include "ppot/packing.hpp"

namespace ppot::cli {

struct DemoConfig {
  int layers = 6;
  /// Boundary radii follow |f'| for f(z) = z / (1 - rho z)^2 on the unit disk.
  double rho = 0.95;
  /// Lattice units per unit-disk radius.
  double lattice_scale = 6.5;
  double tolerance = 1e-14;
  std::size_t paths = 5;
  std::size_t max_annuli = 30;
  double far_fraction = 0.5;
  std::size_t scale_count = 4;
  double p = 2.0;
};

/// Boundary radii for pack_disk, aligned with t.boundary.
std::vector<double> koebe_boundary_radii(const GeneratedGraph& disk, const Triangulation& t, double rho,
                                         double lattice_scale);

/// Point outside every circle, near the smallest one, with the most
/// certified blocking annuli. Candidates are scanned in a fixed order.
std::vector<double> find_anchor(const Packing& p, const Graph& g, std::size_t max_annuli);

/// Far set: the ceil(far_fraction * n) vertices farthest from the anchor.
/// Scales: geometric from the largest remaining distance down to the smallest.
BoundaryProxy packing_proxy(const Packing& p, std::span<const double> anchor, double far_fraction,
                            std::size_t scale_count);

struct DemoResult {
  GeneratedGraph disk;
  Triangulation triangulation;
  CirclePacking packing;
  PackingReport report;
  bool contact_isomorphic = false;
  EdgeMetric metric;
  double metric_norm = 0.0;
  std::vector<double> anchor;
  BlockingRadii radii;
  BlockingMetric blocking;
  DivergenceReport divergence;
  ResolveResult resolve;
};

DemoResult run_obstruction_demo(const DemoConfig& cfg);

}  // namespace ppot::cli
