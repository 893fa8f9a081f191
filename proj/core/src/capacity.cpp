#include "ppot/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppot/error.hpp"

namespace ppot {

CapacityResult p_capacity(const Graph& g, const VertexSet& a, const VertexSet& b, const SolverConfig& cfg) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "capacity needs nonempty A and B");
  VertexSet sa = normalize_set(a), sb = normalize_set(b);
  for (VertexId v : sa)
    if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidIndex, "A vertex out of range");
  for (VertexId v : sb)
    if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidIndex, "B vertex out of range");
  VertexSet both;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
  if (!both.empty()) throw Error(ErrorCode::Overlap, "A and B share vertex " + std::to_string(both.front()));

  DirichletProblem problem{&g, sa, std::vector<double>(sa.size(), 1.0)};
  problem.boundary.insert(problem.boundary.end(), sb.begin(), sb.end());
  problem.boundary_values.resize(problem.boundary.size(), 0.0);
  auto sol = solve_dirichlet(problem, cfg);

  CapacityResult out;
  out.value = dirichlet_energy(g, sol.f, cfg.p);
  out.residual = sol.residual;
  out.status = sol.status;
  out.potential = std::move(sol.f);
  return out;
}

CapacityCurve capacity_curve(const FamilySpec& family, const std::vector<long>& radii, const SolverConfig& cfg) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing");
  CapacityCurve curve;
  curve.family = family.name();
  curve.p = cfg.p;
  curve.radii = radii;
  for (long r : radii) {
    auto ex = build_exhaustion(family, r);
    auto res = p_capacity(ex.graph, {ex.root}, ex.sphere, cfg);
    curve.capacity.push_back(res.value);
    curve.residual.push_back(res.residual);
    curve.status.push_back(res.status);
    curve.vertex_count.push_back(ex.graph.vertex_count());
  }
  return curve;
}

std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::Parabolic: return "parabolic-trend";
    case Trend::Nonparabolic: return "nonparabolic-trend";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TrendFit classify_trend(const std::vector<long>& radii, const std::vector<double>& values,
                        const TrendThresholds& t) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "trend needs at least two (radius, value) pairs");
  for (long r : radii)
    if (r <= 1) throw Error(ErrorCode::InvalidArgument, "trend radii must exceed 1");

  TrendFit fit;
  const std::size_t n = values.size();
  const double first = values.front(), prev = values[n - 2], last = values.back();
  if (!(first > 0.0)) {
    fit.verdict = Trend::Inconclusive;
    return fit;
  }
  fit.retained = last / first;
  fit.final_step = prev > 0.0 ? (prev - last) / prev : 0.0;
  if (last <= 0.0 || prev <= 0.0) {
    fit.loglog_exponent = fit.power_exponent = std::numeric_limits<double>::infinity();
    fit.verdict = Trend::Parabolic;
    return fit;
  }
  const double r0 = static_cast<double>(radii[n - 2]), r1 = static_cast<double>(radii[n - 1]);
  const double dlog = std::log(last) - std::log(prev);
  fit.loglog_exponent = -dlog / (std::log(std::log(r1)) - std::log(std::log(r0)));
  fit.power_exponent = -dlog / (std::log(r1) - std::log(r0));

  if (fit.retained >= t.min_retained && fit.final_step < t.max_final_step)
    fit.verdict = Trend::Nonparabolic;
  else if (fit.retained < t.collapse_ratio || fit.loglog_exponent >= t.min_loglog_exponent)
    fit.verdict = Trend::Parabolic;
  else
    fit.verdict = Trend::Inconclusive;
  return fit;
}

std::vector<IndexVerdict> parabolic_index_estimate(const FamilySpec& family, const std::vector<double>& p_grid,
                                                   const std::vector<long>& radii, const SolverConfig& cfg,
                                                   const TrendThresholds& thresholds) {
  for (double p : p_grid)
    if (!(p > 1.01 && p <= 8.0)) throw Error(ErrorCode::InvalidArgument, "exponent grid must lie in (1.01, 8]");
  std::vector<IndexVerdict> out;
  for (double p : p_grid) {
    SolverConfig c = cfg;
    c.p = p;
    IndexVerdict v;
    v.p = p;
    v.curve = capacity_curve(family, radii, c);
    v.fit = classify_trend(v.curve.radii, v.curve.capacity, thresholds);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ppot
