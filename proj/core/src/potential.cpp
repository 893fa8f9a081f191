#include "ppot/potential.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ppot/error.hpp"

namespace ppot {

namespace {

// |d|^{p-2} d with the continuous extension 0 at d = 0.
inline double signed_power(double d, double p) {
  if (d == 0.0) return 0.0;
  if (p == 2.0) return d;
  if (p == 3.0) return d * std::abs(d);
  return std::copysign(std::pow(std::abs(d), p - 1.0), d);
}

inline double abs_power(double d, double p) {
  double a = std::abs(d);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

void check_size(const Graph& g, const VertexFunction& f) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::GraphMismatch, "function size does not match graph");
}

}  // namespace

double dirichlet_energy(const Graph& g, const VertexFunction& f, double p) {
  check_size(g, f);
  double total = 0.0;
  for (const auto& e : g.edges()) total += abs_power(f[e.u] - f[e.v], p);
  return total;
}

VertexFunction p_laplacian(const Graph& g, const VertexFunction& f, double p) {
  check_size(g, f);
  VertexFunction out(g.vertex_count());
  for (const auto& e : g.edges()) {
    double t = signed_power(f[e.v] - f[e.u], p);
    out[e.u] += t;
    out[e.v] -= t;
  }
  return out;
}

double pairing(const VertexFunction& f, const VertexFunction& g) {
  if (f.size() != g.size()) throw Error(ErrorCode::GraphMismatch, "pairing of functions on different graphs");
  double total = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) total += f[v] * g[v];
  return total;
}

double energy_laplacian_identity_residual(const Graph& g, const VertexFunction& f, double p) {
  const double energy = dirichlet_energy(g, f, p);
  return std::abs(pairing(f, p_laplacian(g, f, p)) + energy) / (1.0 + energy);
}

double energy_directional_derivative(const Graph& g, const VertexFunction& f, const VertexFunction& direction,
                                     double p) {
  return -p * pairing(direction, p_laplacian(g, f, p));
}

double harmonic_residual(const Graph& g, const VertexFunction& f, const VertexSet& interior, double p) {
  auto lap = p_laplacian(g, f, p);
  double worst = 0.0;
  for (VertexId v : interior) worst = std::max(worst, std::abs(lap[v]));
  return worst;
}

void SolverConfig::validate() const {
  if (!(p > 1.01) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "solver exponent must exceed 1.01");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver tolerance must be positive");
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "smoothing epsilon must be nonnegative");
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NoInterior: return "no-interior";
    case SolveStatus::MaxSweepsExceeded: return "max-sweeps-exceeded";
  }
  return "unknown";
}

namespace {

struct Workspace {
  const Graph& g;
  double p;
  std::vector<char> fixed;
  VertexSet interior;
  std::vector<std::size_t> slot;  // vertex -> interior slot, npos for boundary
};

double interior_residual(const Workspace& ws, const VertexFunction& f) {
  return harmonic_residual(ws.g, f, ws.interior, ws.p);
}

// Exact minimizer of t -> sum_u |x_u - t|^p over the neighbours of v.
double local_minimizer(const Graph& g, const VertexFunction& f, VertexId v, double p) {
  auto nbs = g.neighbors(v);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& nb : nbs) {
    lo = std::min(lo, f[nb.vertex]);
    hi = std::max(hi, f[nb.vertex]);
  }
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& nb : nbs) s += f[nb.vertex];
    return s / static_cast<double>(nbs.size());
  }
  // sum_u phi(x_u - t) is decreasing in t; find its zero.
  for (int it = 0; it < 50 && lo < hi; ++it) {
    double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (const auto& nb : nbs) s += signed_power(f[nb.vertex] - mid, p);
    if (s > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

bool coordinate_descent(const Workspace& ws, VertexFunction& f, std::size_t max_sweeps, double tol,
                        DirichletSolution& out) {
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (VertexId v : ws.interior) f[v] = local_minimizer(ws.g, f, v, ws.p);
    out.sweeps = sweep;
    // Residual evaluation costs about one sweep; amortize it on long runs.
    if (sweep < 64 || sweep % 16 == 0 || sweep == max_sweeps) {
      out.residual = interior_residual(ws, f);
      if (out.residual <= tol) return true;
    }
  }
  return false;
}

// Derivative of t -> D_p(f + t * step) where step vanishes on the boundary.
double line_derivative(const Workspace& ws, const VertexFunction& f, const std::vector<double>& step,
                       double t) {
  double total = 0.0;
  for (const auto& e : ws.g.edges()) {
    double su = ws.fixed[e.u] ? 0.0 : step[ws.slot[e.u]];
    double sv = ws.fixed[e.v] ? 0.0 : step[ws.slot[e.v]];
    double s = su - sv;
    if (s == 0.0) continue;
    double d = (f[e.u] + t * su) - (f[e.v] + t * sv);
    total += signed_power(d, ws.p) * s;
  }
  return ws.p * total;
}

bool newton(const Workspace& ws, VertexFunction& f, const SolverConfig& cfg, DirichletSolution& out) {
  using SpMat = Eigen::SparseMatrix<double>;
  const std::size_t n = ws.interior.size();
  const double p = ws.p;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (VertexId v = 0; v < f.size(); ++v)
    if (ws.fixed[v]) {
      lo = std::min(lo, f[v]);
      hi = std::max(hi, f[v]);
    }
  const double osc = std::max(hi - lo, std::numeric_limits<double>::min());
  // Gradient floor for the Hessian weights only.
  const double floor = std::max(cfg.epsilon, 1e-9 * osc);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n + 2 * ws.g.edge_count());
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n)), sol(static_cast<Eigen::Index>(n));
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(std::max<Eigen::Index>(1000, static_cast<Eigen::Index>(4 * std::sqrt(double(n)) * 10)));
  SpMat H(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  out.residual = interior_residual(ws, f);
  for (std::size_t iter = 0; iter < cfg.max_newton_iterations; ++iter) {
    if (out.residual <= cfg.tolerance) return true;
    // The first iteration solves the p = 2 problem as a warm start.
    const bool harmonic_start = (iter == 0 && p != 2.0);
    const double q = harmonic_start ? 2.0 : p;
    trip.clear();
    std::vector<double> diag(n, 0.0);
    rhs.setZero();
    for (const auto& e : ws.g.edges()) {
      const double d = f[e.u] - f[e.v];
      double w;
      if (q == 2.0) {
        w = 1.0;
      } else {
        const double a = std::max(std::abs(d), floor);
        w = (q - 1.0) * std::pow(a, q - 2.0);
      }
      const double gflux = harmonic_start ? d : signed_power(d, p);
      const bool fu = ws.fixed[e.u], fv = ws.fixed[e.v];
      const auto iu = static_cast<Eigen::Index>(ws.slot[e.u]);
      const auto iv = static_cast<Eigen::Index>(ws.slot[e.v]);
      if (!fu) {
        diag[ws.slot[e.u]] += w;
        rhs[iu] -= gflux;
      }
      if (!fv) {
        diag[ws.slot[e.v]] += w;
        rhs[iv] += gflux;
      }
      if (!fu && !fv) {
        trip.emplace_back(iu, iv, -w);
        trip.emplace_back(iv, iu, -w);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto ii = static_cast<Eigen::Index>(i);
      trip.emplace_back(ii, ii, diag[i] > 0.0 ? diag[i] : 1.0);
    }
    H.setFromTriplets(trip.begin(), trip.end());
    cg.compute(H);
    if (cg.info() != Eigen::Success) return false;
    sol = cg.solve(rhs);
    std::vector<double> step(sol.data(), sol.data() + n);

    double t = 1.0;
    if (!harmonic_start) {
      const double d0 = line_derivative(ws, f, step, 0.0);
      if (!(d0 < 0.0)) return false;
      double d1 = line_derivative(ws, f, step, 1.0);
      if (d1 > 0.0) {
        // Root of the monotone line derivative in (0, 1): Illinois false position.
        double a = 0.0, fa = d0, b = 1.0, fb = d1;
        int side = 0;
        for (int k = 0; k < 60; ++k) {
          t = (a * fb - b * fa) / (fb - fa);
          double ft = line_derivative(ws, f, step, t);
          if (std::abs(ft) <= 1e-3 * std::abs(d0)) break;
          if (ft > 0.0) {
            b = t;
            fb = ft;
            if (side == -1) fa *= 0.5;
            side = -1;
          } else {
            a = t;
            fa = ft;
            if (side == 1) fb *= 0.5;
            side = 1;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) f[ws.interior[i]] += t * step[i];
    out.newton_iterations = iter + 1;
    const double previous = out.residual;
    out.residual = interior_residual(ws, f);
    if (!harmonic_start && t < 1e-10 && out.residual >= previous) return false;
  }
  return out.residual <= cfg.tolerance;
}

}  // namespace

DirichletSolution solve_dirichlet(const DirichletProblem& problem, const SolverConfig& cfg) {
  cfg.validate();
  if (!problem.graph) throw Error(ErrorCode::InvalidArgument, "Dirichlet problem without a graph");
  const Graph& g = *problem.graph;
  if (problem.boundary.empty()) throw Error(ErrorCode::InvalidArgument, "Dirichlet problem needs boundary vertices");
  if (problem.boundary.size() != problem.boundary_values.size())
    throw Error(ErrorCode::InvalidArgument, "boundary values do not match boundary set");

  Workspace ws{g, cfg.p, std::vector<char>(g.vertex_count(), 0), {}, {}};
  DirichletSolution out;
  out.f = VertexFunction(g.vertex_count());
  double mean = 0.0;
  for (std::size_t i = 0; i < problem.boundary.size(); ++i) {
    VertexId v = problem.boundary[i];
    if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidIndex, "boundary vertex out of range");
    if (ws.fixed[v]) throw Error(ErrorCode::InvalidArgument, "boundary vertex listed twice");
    if (!std::isfinite(problem.boundary_values[i])) throw Error(ErrorCode::InvalidArgument, "non-finite boundary value");
    ws.fixed[v] = 1;
    out.f[v] = problem.boundary_values[i];
    mean += problem.boundary_values[i];
  }
  mean /= static_cast<double>(problem.boundary.size());
  ws.slot.assign(g.vertex_count(), ShortestPaths::npos);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!ws.fixed[v]) {
      ws.slot[v] = ws.interior.size();
      ws.interior.push_back(v);
      out.f[v] = mean;
    }
  }
  if (ws.interior.empty()) {
    out.status = SolveStatus::NoInterior;
    return out;
  }

  bool ok = false;
  switch (cfg.method) {
    case SolverMethod::CoordinateDescent:
      ok = coordinate_descent(ws, out.f, cfg.max_sweeps, cfg.tolerance, out);
      break;
    case SolverMethod::Newton:
      ok = newton(ws, out.f, cfg, out);
      break;
    case SolverMethod::Auto: {
      VertexFunction start = out.f;
      ok = newton(ws, out.f, cfg, out);
      if (!ok) {
        // Coordinate descent is monotone in energy; restart from the better iterate.
        if (!(dirichlet_energy(g, out.f, cfg.p) <= dirichlet_energy(g, start, cfg.p))) out.f = start;
        ok = coordinate_descent(ws, out.f, cfg.max_sweeps, cfg.tolerance, out);
      }
      break;
    }
  }
  out.residual = interior_residual(ws, out.f);
  out.status = ok ? SolveStatus::Converged : SolveStatus::MaxSweepsExceeded;
  return out;
}

BoundaryScheme parse_boundary_scheme(const std::string& text) {
  if (text == "constant") return BoundaryScheme::Constant;
  if (text == "coordinate-ramp") return BoundaryScheme::CoordinateRamp;
  if (text == "random-fixed-seed" || text == "random") return BoundaryScheme::RandomFixedSeed;
  throw Error(ErrorCode::Parse, "unknown boundary scheme '" + text + "'");
}

std::vector<ProbePoint> liouville_probe(const FamilySpec& family, const SolverConfig& cfg,
                                        const std::vector<long>& radii, BoundaryScheme scheme,
                                        std::uint64_t seed) {
  std::vector<ProbePoint> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long R : radii) {
    auto ex = build_exhaustion(family, R);
    std::vector<double> values;
    values.reserve(ex.sphere.size());
    for (VertexId v : ex.sphere) {
      switch (scheme) {
        case BoundaryScheme::Constant: values.push_back(0.0); break;
        case BoundaryScheme::CoordinateRamp: values.push_back(ex.coords[v].at(0)); break;
        case BoundaryScheme::RandomFixedSeed: values.push_back(unit(rng)); break;
      }
    }
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn, span = *mx - *mn;
    if (span > 0.0)
      for (auto& x : values) x = (x - lo) / span;

    DirichletProblem prob{&ex.graph, ex.sphere, values};
    auto sol = solve_dirichlet(prob, cfg);
    double ilo = std::numeric_limits<double>::infinity(), ihi = -ilo;
    for (VertexId v : ex.inner_ball) {
      ilo = std::min(ilo, sol.f[v]);
      ihi = std::max(ihi, sol.f[v]);
    }
    out.push_back({R, ihi - ilo, sol.residual, sol.status});
  }
  return out;
}

}  // namespace ppot
