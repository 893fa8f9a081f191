#pragma once

#include <string_view>
#include <vector>

#include "ppot/generators.hpp"
#include "ppot/graph.hpp"
#include "ppot/potential.hpp"

namespace ppot {

struct CapacityResult {
  double value = 0.0;
  double residual = 0.0;
  SolveStatus status = SolveStatus::Converged;
  /// The minimizing potential: 1 on A, 0 on B.
  VertexFunction potential;
};

/// min D_p(f) over f with f = 1 on A and f = 0 on B. Throws Overlap when A and
/// B meet, InvalidArgument when either is empty.
CapacityResult p_capacity(const Graph& g, const VertexSet& a, const VertexSet& b, const SolverConfig& cfg);

struct CapacityCurve {
  std::string family;
  double p = 2.0;
  std::vector<long> radii;
  std::vector<double> capacity;
  std::vector<double> residual;
  std::vector<SolveStatus> status;
  std::vector<std::size_t> vertex_count;
};

/// cap_p({root}, sphere(R)) on ball(R) for each radius. Radii must be strictly
/// increasing.
CapacityCurve capacity_curve(const FamilySpec& family, const std::vector<long>& radii, const SolverConfig& cfg);

enum class Trend { Parabolic, Nonparabolic, Inconclusive };

std::string_view to_string(Trend t);

/// Classification thresholds for a decreasing sequence indexed by radius.
struct TrendThresholds {
  /// Nonparabolic: last >= min_retained * first ...
  double min_retained = 0.5;
  /// ... and (previous - last) / previous < max_final_step.
  double max_final_step = 0.02;
  /// Parabolic: last < collapse_ratio * first ...
  double collapse_ratio = 0.1;
  /// ... or, over the last two radii, -d log(value) / d log(log R) >= this.
  double min_loglog_exponent = 0.5;
};

struct TrendFit {
  Trend verdict = Trend::Inconclusive;
  double retained = 0.0;          // last / first
  double final_step = 0.0;        // relative decrease over the last two radii
  double loglog_exponent = 0.0;   // value ~ (log R)^-a, last two radii
  double power_exponent = 0.0;    // value ~ R^-b, last two radii
};

/// Needs at least two radii, all > 1. Nonpositive values count as collapsed.
TrendFit classify_trend(const std::vector<long>& radii, const std::vector<double>& values,
                        const TrendThresholds& thresholds = {});

struct IndexVerdict {
  double p = 2.0;
  CapacityCurve curve;
  TrendFit fit;
};

/// One capacity curve and verdict per exponent. Exponents must lie in (1.01, 8].
std::vector<IndexVerdict> parabolic_index_estimate(const FamilySpec& family, const std::vector<double>& p_grid,
                                                   const std::vector<long>& radii, const SolverConfig& cfg,
                                                   const TrendThresholds& thresholds = {});

}  // namespace ppot
