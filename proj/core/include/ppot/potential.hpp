#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppot/generators.hpp"
#include "ppot/graph.hpp"

namespace ppot {

/// Sum over edges of |f(u) - f(v)|^p.
double dirichlet_energy(const Graph& g, const VertexFunction& f, double p);

/// Delta_p f(v) = sum_{u~v} |f(u)-f(v)|^{p-2} (f(u)-f(v)); zero differences
/// contribute zero for every p > 1.
VertexFunction p_laplacian(const Graph& g, const VertexFunction& f, double p);

/// sum_v f(v) g(v)
double pairing(const VertexFunction& f, const VertexFunction& g);

/// |<f, Delta_p f> + D_p(f)| / (1 + D_p(f)).
double energy_laplacian_identity_residual(const Graph& g, const VertexFunction& f, double p);

/// d/dt D_p(f + t g) at t = 0, computed as -p <g, Delta_p f>.
double energy_directional_derivative(const Graph& g, const VertexFunction& f,
                                     const VertexFunction& direction, double p);

/// max over `interior` of |Delta_p f(v)|.
double harmonic_residual(const Graph& g, const VertexFunction& f, const VertexSet& interior, double p);

enum class SolverMethod {
  /// Newton on the energy and, if it stalls, coordinate descent from its result.
  Auto,
  /// Cyclic coordinate descent with exact 1-D minimization by bisection.
  CoordinateDescent,
  /// Damped Newton with a regularized Hessian and exact line search.
  Newton,
};

struct SolverConfig {
  double p = 2.0;
  double tolerance = 1e-9;
  std::size_t max_sweeps = 100000;
  /// Hessian regularization for the Newton path; the energy and the returned
  /// residual are never smoothed.
  double epsilon = 1e-12;
  SolverMethod method = SolverMethod::Auto;
  std::size_t max_newton_iterations = 200;

  /// Throws InvalidArgument unless p > 1.01, tolerance > 0, epsilon >= 0.
  void validate() const;
};

struct DirichletProblem {
  const Graph* graph = nullptr;
  VertexSet boundary;
  /// Values aligned with `boundary`.
  std::vector<double> boundary_values;
};

enum class SolveStatus { Converged, NoInterior, MaxSweepsExceeded };

std::string_view to_string(SolveStatus s);

struct DirichletSolution {
  VertexFunction f;
  SolveStatus status = SolveStatus::Converged;
  double residual = 0.0;
  std::size_t sweeps = 0;
  std::size_t newton_iterations = 0;
};

/// Minimizes D_p with the boundary values fixed. The minimizer is unique for
/// p > 1 and is the p-harmonic extension of the boundary data.
DirichletSolution solve_dirichlet(const DirichletProblem& problem, const SolverConfig& cfg);

enum class BoundaryScheme { Constant, CoordinateRamp, RandomFixedSeed };

BoundaryScheme parse_boundary_scheme(const std::string& text);

struct ProbePoint {
  long radius = 0;
  double oscillation = 0.0;
  double residual = 0.0;
  SolveStatus status = SolveStatus::Converged;
};

/// For each R: solve on ball(R) with sphere data of oscillation 1 and report
/// the oscillation of the solution on ball(R/4). A decaying profile is
/// consistent with a Liouville property; it is evidence, not a proof.
std::vector<ProbePoint> liouville_probe(const FamilySpec& family, const SolverConfig& cfg,
                                        const std::vector<long>& radii, BoundaryScheme scheme,
                                        std::uint64_t seed = 1);

}  // namespace ppot
