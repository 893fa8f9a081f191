#include "ppot/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ppot/error.hpp"

namespace ppot {

PathFamily PathFamily::explicit_paths(std::vector<Path> paths) {
  PathFamily f;
  f.kind_ = Kind::Explicit;
  f.paths_ = std::move(paths);
  return f;
}

PathFamily PathFamily::connector(VertexSet a, VertexSet b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "connector family needs nonempty A and B");
  PathFamily f;
  f.kind_ = Kind::Connector;
  f.sources_ = normalize_set(std::move(a));
  f.targets_ = normalize_set(std::move(b));
  VertexSet both;
  std::set_intersection(f.sources_.begin(), f.sources_.end(), f.targets_.begin(), f.targets_.end(),
                        std::back_inserter(both));
  if (!both.empty()) throw Error(ErrorCode::Overlap, "A and B share vertex " + std::to_string(both.front()));
  return f;
}

void ModulusConfig::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "modulus exponent must be > 1");
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be in (0, 1)");
  if (!(inner_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "inner tolerance must be positive");
  if (paths_per_round == 0) throw Error(ErrorCode::InvalidArgument, "paths_per_round must be positive");
}

namespace {

struct Active {
  Path path;
  std::vector<EdgeId> edges;
  double lambda = 0.0;
};

class DualAscent {
 public:
  DualAscent(std::size_t edge_count, double p)
      : p_(p), expo_(1.0 / (p - 1.0)), w_(edge_count, 0.0), m_(edge_count, 0.0) {}

  const std::vector<double>& density() const { return m_; }
  std::vector<Active>& active() { return active_; }

  void add(Path path, std::vector<EdgeId> edges) { active_.push_back({std::move(path), std::move(edges), 0.0}); }

  /// Sweeps until every active constraint satisfies KKT within tol.
  std::size_t solve(double tol, std::size_t max_sweeps) {
    rebuild();
    std::size_t sweeps = 0;
    while (sweeps < max_sweeps) {
      ++sweeps;
      double worst = 0.0;
      for (auto& a : active_) worst = std::max(worst, update(a));
      if (worst <= tol) break;
    }
    rebuild();
    return sweeps;
  }

  double primal() const {
    double s = 0.0;
    for (double x : m_) s += std::pow(x, p_);
    return s;
  }

  double dual() const {
    double lam = 0.0, conj = 0.0;
    for (const auto& a : active_) lam += a.lambda;
    for (double w : w_) conj += std::pow(w / p_, p_ * expo_);
    return lam - (p_ - 1.0) * conj;
  }

 private:
  double power(double x) const {
    if (expo_ == 1.0) return x;
    if (expo_ == 2.0) return x * x;
    if (expo_ == 0.5) return std::sqrt(x);
    return std::pow(x, expo_);
  }
  double density_of(double w) const { return w > 0.0 ? power(w / p_) : 0.0; }

  void rebuild() {
    std::fill(w_.begin(), w_.end(), 0.0);
    for (const auto& a : active_)
      for (EdgeId e : a.edges) w_[e] += a.lambda;
    for (std::size_t e = 0; e < w_.size(); ++e) m_[e] = density_of(w_[e]);
  }

  // Exact maximization of the dual in one multiplier; returns the KKT
  // violation measured before the update.
  double update(Active& a) {
    double len = 0.0;
    for (EdgeId e : a.edges) len += m_[e];
    double violation = a.lambda > 0.0 ? std::abs(len - 1.0) : std::max(0.0, 1.0 - len);
    if (violation == 0.0) return 0.0;

    base_.clear();
    for (EdgeId e : a.edges) base_.push_back(std::max(0.0, w_[e] - a.lambda));
    auto h = [&](double lam, double* dh) {
      double s = 0.0, d = 0.0;
      for (double b : base_) {
        double x = (b + lam) / p_;
        if (x <= 0.0) continue;
        double y = power(x);
        s += y;
        d += expo_ * y / (b + lam);
      }
      if (dh) *dh = d;
      return s - 1.0;
    };

    double next = 0.0;
    if (h(0.0, nullptr) < 0.0) {
      double lo = 0.0, hi = p_ * std::pow(static_cast<double>(base_.size()), -(p_ - 1.0));
      double lam = std::clamp(a.lambda, lo, hi);
      if (lam <= 0.0) lam = 0.5 * hi;
      for (int it = 0; it < 100; ++it) {
        double dh = 0.0;
        double v = h(lam, &dh);
        if (v < 0.0) lo = lam; else hi = lam;
        if (std::abs(v) < 1e-15 || hi - lo <= 1e-16 * hi) break;
        double step = dh > 0.0 ? lam - v / dh : 0.5 * (lo + hi);
        lam = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
      }
      next = lam;
    }
    const double delta = next - a.lambda;
    if (delta != 0.0) {
      for (EdgeId e : a.edges) {
        w_[e] += delta;
        m_[e] = density_of(w_[e]);
      }
    }
    a.lambda = next;
    return violation;
  }

  double p_, expo_;
  std::vector<double> w_, m_;
  std::vector<Active> active_;
  std::vector<double> base_;
};

struct Candidate {
  double length;
  std::size_t key;  // target vertex or explicit path index
};

}  // namespace

ModulusResult p_modulus(const Graph& g, const PathFamily& family, const ModulusConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.vertex_count();
  ModulusResult out;
  out.density.assign(g.edge_count(), 0.0);

  std::vector<std::vector<EdgeId>> explicit_edges;
  if (family.kind() == PathFamily::Kind::Explicit) {
    for (const auto& path : family.paths()) {
      auto edges = path_edges(g, path);
      if (edges.empty()) throw Error(ErrorCode::InvalidPath, "family path without edges has no finite modulus");
      explicit_edges.push_back(std::move(edges));
    }
    if (explicit_edges.empty()) {
      out.converged = true;
      out.shortest_length = std::numeric_limits<double>::infinity();
      return out;
    }
  } else {
    for (VertexId v : family.sources())
      if (v >= n) throw Error(ErrorCode::InvalidIndex, "source out of range");
    for (VertexId v : family.targets())
      if (v >= n) throw Error(ErrorCode::InvalidIndex, "target out of range");
  }

  DualAscent solver(g.edge_count(), cfg.p);
  std::set<std::vector<EdgeId>> seen;
  // Ties between equally short paths go to the one with fewer edges; the
  // perturbation adds at most n * eta to any simple path.
  const double eta = 1e-12 / static_cast<double>(n);
  std::vector<double> weights(g.edge_count());

  auto uncovered = [&](bool perturbed) {
    const auto& m = solver.density();
    for (std::size_t e = 0; e < weights.size(); ++e) weights[e] = m[e] + (perturbed ? eta : 0.0);
    std::vector<Candidate> cands;
    ShortestPaths sp;
    if (family.kind() == PathFamily::Kind::Connector) {
      sp = shortest_paths(g, weights, family.sources());
      for (VertexId b : family.targets()) {
        if (!std::isfinite(sp.distance[b])) continue;
        cands.push_back({sp.distance[b], b});
      }
      if (cands.empty()) throw Error(ErrorCode::NoPath, "no path from A to B");
    } else {
      for (std::size_t i = 0; i < explicit_edges.size(); ++i) {
        double len = 0.0;
        for (EdgeId e : explicit_edges[i]) len += weights[e];
        cands.push_back({len, i});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
      return x.length != y.length ? x.length < y.length : x.key < y.key;
    });
    return std::make_pair(std::move(cands), std::move(sp));
  };

  // Early rounds only need a rough multiplier estimate; the inner tolerance
  // tracks the current violation and reaches cfg.inner_tolerance at the end.
  double inner_tol = cfg.inner_tolerance;
  bool tight = false;
  bool done = false;
  while (out.rounds < cfg.max_rounds) {
    ++out.rounds;
    auto [cands, sp] = uncovered(true);
    const double violation = 1.0 - cands.front().length;
    if (violation <= cfg.tolerance) {
      if (tight) {
        done = true;
        break;
      }
      out.sweeps += solver.solve(inner_tol, cfg.max_inner_sweeps);
      tight = true;
      continue;
    }
    tight = false;
    std::size_t added = 0;
    for (const auto& c : cands) {
      if (c.length >= 1.0 - cfg.tolerance || added == cfg.paths_per_round) break;
      Path path;
      std::vector<EdgeId> edges;
      if (family.kind() == PathFamily::Kind::Connector) {
        path = sp.path_to(c.key);
        edges = path_edges(g, path);
      } else {
        path = family.paths()[c.key];
        edges = explicit_edges[c.key];
      }
      std::vector<EdgeId> key = edges;
      std::sort(key.begin(), key.end());
      if (!seen.insert(std::move(key)).second) continue;
      solver.add(std::move(path), std::move(edges));
      ++added;
    }
    double round_tol = std::max(inner_tol, 0.1 * violation);
    if (added == 0) {
      // Every violated path is already active: the inner solve was too loose.
      if (inner_tol < 1e-15) break;
      inner_tol *= 0.01;
      round_tol = inner_tol;
    }
    out.sweeps += solver.solve(round_tol, cfg.max_inner_sweeps);
  }
  out.converged = done;

  auto [cands, sp] = uncovered(false);
  const double shortest = cands.front().length;
  out.shortest_length = shortest;
  out.lower_bound = std::max(0.0, solver.dual());
  if (shortest > 0.0) {
    const auto& m = solver.density();
    for (std::size_t e = 0; e < m.size(); ++e) out.density[e] = m[e] / shortest;
    out.value = solver.primal() / std::pow(shortest, cfg.p);
  } else {
    out.value = std::numeric_limits<double>::infinity();
  }
  for (auto& a : solver.active()) {
    out.active_paths.push_back(std::move(a.path));
    out.multipliers.push_back(a.lambda);
  }
  return out;
}

double extremal_length(const Graph& g, const PathFamily& family, const ModulusConfig& cfg) {
  double mod = p_modulus(g, family, cfg).value;
  return mod > 0.0 ? 1.0 / mod : std::numeric_limits<double>::infinity();
}

NullTrend null_family_trend(const FamilySpec& family, const std::vector<long>& radii, const ModulusConfig& cfg,
                            const NullTrendThresholds& thresholds) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing");
  NullTrend out;
  out.family = family.name();
  out.p = cfg.p;
  out.radii = radii;
  for (long r : radii) {
    auto ex = build_exhaustion(family, r);
    auto res = p_modulus(ex.graph, PathFamily::connector({ex.root}, ex.sphere), cfg);
    out.modulus.push_back(res.value);
    out.gap.push_back(res.value - res.lower_bound);
  }
  if (radii.size() >= 2) {
    out.fit = classify_trend(out.radii, out.modulus, thresholds.trend);
    out.null_trend = out.modulus.back() < thresholds.null_ratio * out.modulus.front() ||
                     out.fit.verdict == Trend::Parabolic;
  }
  return out;
}

ResolveResult resolving_check(const Graph& g, const EdgeMetric& m, const BoundaryProxy& proxy,
                              const ModulusConfig& cfg, double max_final_ratio) {
  const std::size_t n = g.vertex_count();
  if (proxy.scales.empty()) throw Error(ErrorCode::InvalidArgument, "resolving check needs at least one scale");
  for (std::size_t i = 0; i < proxy.scales.size(); ++i) {
    if (!(proxy.scales[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "scales must be positive");
    if (i && !(proxy.scales[i] < proxy.scales[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "scales must be strictly decreasing");
  }
  if (proxy.far_set.empty()) throw Error(ErrorCode::InvalidArgument, "far set is empty");

  std::vector<double> dist(n);
  if (const auto* e = std::get_if<EuclideanAnchor>(&proxy.anchor)) {
    if (e->positions.size() != n) throw Error(ErrorCode::InvalidArgument, "one position per vertex required");
    for (VertexId v = 0; v < n; ++v) {
      const auto& x = e->positions[v];
      if (x.size() != e->point.size()) throw Error(ErrorCode::InvalidArgument, "position dimension mismatch");
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - e->point[k]) * (x[k] - e->point[k]);
      dist[v] = std::sqrt(s);
    }
  } else {
    const auto& va = std::get<VertexAnchor>(proxy.anchor);
    auto f = boundary_distance_function(g, m, va.anchor);
    for (VertexId v = 0; v < n; ++v) dist[v] = f[v];
  }

  ResolveResult out;
  out.scales = proxy.scales;
  std::vector<VertexSet> targets;
  for (double s : proxy.scales) {
    VertexSet t;
    for (VertexId v = 0; v < n; ++v)
      if (dist[v] <= s) t.push_back(v);
    targets.push_back(std::move(t));
  }
  if (targets.back().empty()) throw Error(ErrorCode::EmptyTarget, "no vertex within the smallest scale");
  for (auto& t : targets) {
    if (t.empty()) throw Error(ErrorCode::EmptyTarget, "no vertex within a scale");
    auto res = p_modulus(g, PathFamily::connector(proxy.far_set, t), cfg);
    out.modulus.push_back(res.value);
    out.gap.push_back(res.value - res.lower_bound);
    out.target_size.push_back(t.size());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < out.modulus.size(); ++i) decreasing = decreasing && out.modulus[i] < out.modulus[i - 1];
  out.final_ratio = out.modulus.front() > 0.0 ? out.modulus.back() / out.modulus.front() : 0.0;
  out.resolving_trend = out.modulus.size() >= 2 && decreasing && out.final_ratio <= max_final_ratio;
  return out;
}

VertexFunction boundary_distance_function(const Graph& g, const EdgeMetric& m, const VertexSet& anchor) {
  if (anchor.empty()) throw Error(ErrorCode::InvalidArgument, "anchor set is empty");
  if (m.size() != g.edge_count()) throw Error(ErrorCode::GraphMismatch, "metric size differs from edge count");
  auto sp = shortest_paths(g, m.values(), anchor);
  return VertexFunction(std::move(sp.distance));
}

}  // namespace ppot
