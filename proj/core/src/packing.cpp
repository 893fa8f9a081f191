#include "ppot/packing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ppot/error.hpp"
#include "ppot/io.hpp"

namespace ppot {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Calls f(i, j), i < j, for every pair whose extents may touch along the
// first axis; all pairs below the scan limit.
template <class Extent, class F>
void for_candidate_pairs(const Packing& p, Extent extent, F f) {
  const std::size_t n = p.size();
  if (n <= kPairScanLimit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) f(i, j);
    return;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto lo = [&](std::size_t i) { return p.balls[i].center[0] - extent(i); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lo(a) != lo(b) ? lo(a) < lo(b) : a < b;
  });
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    const double hi = p.balls[i].center[0] + extent(i);
    for (std::size_t b = a + 1; b < n && lo(order[b]) <= hi; ++b) {
      const std::size_t j = order[b];
      f(std::min(i, j), std::max(i, j));
    }
  }
}

double unit_ball_volume(int d) {
  return std::pow(M_PI, 0.5 * d) / boost::math::tgamma(0.5 * d + 1.0);
}

// Volume of the cap of height h (0 <= h <= 2R) of a d-ball of radius R.
double cap_volume(int d, double radius, double h) {
  if (h <= 0.0) return 0.0;
  const double full = unit_ball_volume(d) * std::pow(radius, d);
  if (h >= 2.0 * radius) return full;
  if (h > radius) return full - cap_volume(d, radius, 2.0 * radius - h);
  const double x = std::clamp((2.0 * radius * h - h * h) / (radius * radius), 0.0, 1.0);
  return 0.5 * full * boost::math::ibeta(0.5 * (d + 1), 0.5, x);
}

// Volume of the intersection of two d-balls at center distance t.
double lens_volume(int d, double a, double b, double t) {
  if (t >= a + b) return 0.0;
  if (t <= std::abs(a - b)) return unit_ball_volume(d) * std::pow(std::min(a, b), d);
  const double x = (t * t + a * a - b * b) / (2.0 * t);
  return cap_volume(d, a, a - x) + cap_volume(d, b, b - (t - x));
}

}  // namespace

void Packing::validate() const {
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "packing dimension must be >= 1");
  if (!(roundness >= 1.0) || !std::isfinite(roundness))
    throw Error(ErrorCode::InvalidArgument, "roundness bound must be finite and >= 1");
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& b = balls[i];
    if (b.center.size() != static_cast<std::size_t>(dimension))
      throw Error(ErrorCode::InvalidArgument, "ball " + std::to_string(i) + " has the wrong dimension");
    for (double x : b.center)
      if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "ball " + std::to_string(i) + " center not finite");
    if (!(b.r_in > 0.0) || !(b.r_out >= b.r_in) || !std::isfinite(b.r_out))
      throw Error(ErrorCode::InvalidArgument, "ball " + std::to_string(i) + " needs 0 < r_in <= r_out");
    if (b.r_out > roundness * b.r_in * (1.0 + 1e-12))
      throw Error(ErrorCode::InvalidArgument, "ball " + std::to_string(i) + " exceeds the roundness bound");
  }
}

Packing read_packing(std::istream& in) {
  Packing p;
  std::string line;
  std::size_t count = 0;
  bool header = false;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (!header) {
      if (toks.size() != 4 || toks[0] != "packing")
        throw Error(ErrorCode::Parse, "expected 'packing <d> <count> <roundness>' header");
      p.dimension = static_cast<int>(parse_index(toks[1]));
      count = parse_index(toks[2]);
      p.roundness = parse_double(toks[3]);
      header = true;
      continue;
    }
    if (toks.size() != static_cast<std::size_t>(p.dimension) + 2)
      throw Error(ErrorCode::Parse, "ball line needs " + std::to_string(p.dimension + 2) + " numbers");
    Ball b;
    for (int k = 0; k < p.dimension; ++k) b.center.push_back(parse_double(toks[k]));
    b.r_in = parse_double(toks[p.dimension]);
    b.r_out = parse_double(toks[p.dimension + 1]);
    p.balls.push_back(std::move(b));
  }
  if (!header) throw Error(ErrorCode::Parse, "missing packing header");
  if (p.balls.size() != count)
    throw Error(ErrorCode::Parse, "header declares " + std::to_string(count) + " balls, found " +
                                      std::to_string(p.balls.size()));
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return p;
}

Packing read_packing_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  return read_packing(in);
}

void write_packing(std::ostream& out, const Packing& p) {
  out << "packing " << p.dimension << ' ' << p.size() << ' ' << format_double(p.roundness) << '\n';
  for (const auto& b : p.balls) {
    for (double x : b.center) out << format_double(x) << ' ';
    out << format_double(b.r_in) << ' ' << format_double(b.r_out) << '\n';
  }
}

PackingReport verify_packing(const Packing& p, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
  PackingReport report;
  for (const auto& b : p.balls) report.realized_roundness = std::max(report.realized_roundness, b.r_out / b.r_in);
  for_candidate_pairs(p, [&](std::size_t i) { return p.balls[i].r_in; }, [&](std::size_t i, std::size_t j) {
    const auto& a = p.balls[i];
    const auto& b = p.balls[j];
    double depth = a.r_in + b.r_in - distance(a.center, b.center);
    if (depth > tol) report.violations.push_back({i, j, depth});
  });
  std::sort(report.violations.begin(), report.violations.end(),
            [](const Overlap& x, const Overlap& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  return report;
}

ContactGraph contact_graph(const Packing& p, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
  ContactGraph out;
  for_candidate_pairs(p, [&](std::size_t i) { return p.balls[i].r_out * (1.0 + tol); },
                      [&](std::size_t i, std::size_t j) {
                        const auto& a = p.balls[i];
                        const auto& b = p.balls[j];
                        const double sum = a.r_out + b.r_out;
                        if (std::abs(distance(a.center, b.center) - sum) <= tol * sum) out.edges.push_back({i, j});
                      });
  std::sort(out.edges.begin(), out.edges.end(),
            [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
  std::vector<std::size_t> degree(p.size(), 0);
  for (const auto& e : out.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (auto d : degree) out.max_degree = std::max(out.max_degree, d);
  try {
    if (p.size() > 0) out.graph = Graph(p.size(), out.edges);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Disconnected) throw;
  }
  return out;
}

EdgeMetric packing_metric(const Packing& p, const Graph& g) {
  if (g.vertex_count() != p.size())
    throw Error(ErrorCode::GraphMismatch, "graph has " + std::to_string(g.vertex_count()) + " vertices, packing has " +
                                              std::to_string(p.size()) + " balls");
  std::vector<double> m;
  m.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto& a = p.balls[e.u];
    const auto& b = p.balls[e.v];
    const double sum = a.r_out + b.r_out;
    if (std::abs(distance(a.center, b.center) - sum) > kSolvedTangencyTolerance * sum)
      throw Error(ErrorCode::GraphMismatch,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " joins balls not in contact");
    m.push_back(a.diameter() + b.diameter());
  }
  return EdgeMetric(std::move(m));
}

double metric_lp_norm(std::span<const double> m, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "norm exponent must be >= 1");
  double s = 0.0;
  for (double x : m) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

double metric_lp_norm(const EdgeMetric& m, double p) { return metric_lp_norm(m.values(), p); }

StereographicLift stereographic_lift(const Packing& p) {
  StereographicLift out;
  auto lift = [](std::span<const double> z) {
    double n2 = 0.0;
    for (double x : z) n2 += x * x;
    std::vector<double> y;
    for (double x : z) y.push_back(2.0 * x / (1.0 + n2));
    y.push_back((n2 - 1.0) / (n2 + 1.0));
    return std::make_pair(std::move(y), n2);
  };
  for (const auto& b : p.balls) {
    auto [point, n2] = lift(b.center);
    LiftedBall lb;
    lb.point = std::move(point);
    lb.factor = 2.0 / (1.0 + n2);
    lb.chordal_estimate = b.diameter() * lb.factor;
    // Extreme points along the radial line through the center (any axis at
    // the origin).
    const double norm = std::sqrt(n2);
    std::vector<double> u(b.center.size(), 0.0);
    if (norm > 0.0) {
      for (std::size_t k = 0; k < u.size(); ++k) u[k] = b.center[k] / norm;
    } else {
      u[0] = 1.0;
    }
    std::vector<double> x1 = b.center, x2 = b.center;
    for (std::size_t k = 0; k < u.size(); ++k) {
      x1[k] -= b.r_out * u[k];
      x2[k] += b.r_out * u[k];
    }
    lb.chordal_exact = distance(lift(x1).first, lift(x2).first);
    const double d2 = b.diameter() * b.diameter();
    out.second_order_coefficient = std::max(out.second_order_coefficient, std::abs(lb.chordal_exact - lb.chordal_estimate) / d2);
    out.volume_proxy += std::pow(lb.chordal_exact, p.dimension);
    out.balls.push_back(std::move(lb));
  }
  return out;
}

double psi(double r, double dist) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "psi needs r > 0");
  if (dist <= r) return r;
  if (dist >= 2.0 * r) return 0.0;
  return 2.0 * r - dist;
}

double psi(double r, std::span<const double> z, std::span<const double> anchor) {
  if (z.size() != anchor.size()) throw Error(ErrorCode::InvalidArgument, "psi dimension mismatch");
  return psi(r, distance(z, anchor));
}

double BlockingRadii::distance(std::span<const double> z) const { return scale * ppot::distance(z, anchor); }

bool BlockingRadii::certified() const {
  if (radii.empty() || disjoint.size() != radii.size() || no_edge.size() != radii.size()) return false;
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!disjoint[i] || !no_edge[i]) return false;
  return true;
}

BlockingRadii blocking_radii(const Packing& p, const Graph& g, std::span<const double> anchor, std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (anchor.size() != static_cast<std::size_t>(p.dimension))
    throw Error(ErrorCode::InvalidArgument, "anchor dimension mismatch");
  if (g.vertex_count() != p.size()) throw Error(ErrorCode::GraphMismatch, "graph and packing sizes differ");
  BlockingRadii br;
  br.anchor.assign(anchor.begin(), anchor.end());
  const std::size_t n = p.size();
  std::vector<double> dist(n), rad(n);
  double far = 0.0;
  for (std::size_t v = 0; v < n; ++v) far = std::max(far, ppot::distance(p.balls[v].center, anchor));
  if (!(far > 0.0)) throw Error(ErrorCode::InvalidArgument, "every center coincides with the anchor");
  br.scale = 2.0 / far;
  for (std::size_t v = 0; v < n; ++v) {
    dist[v] = br.scale * ppot::distance(p.balls[v].center, anchor);
    rad[v] = br.scale * p.balls[v].r_out;
  }

  // Largest admissible s <= r/2 such that the closed ball B(s) misses every
  // outer ball of diameter >= r/2; nullopt when the anchor is inside one.
  auto rho = [&](double r) -> std::optional<double> {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < n; ++v)
      if (2.0 * rad[v] >= 0.5 * r) gap = std::min(gap, dist[v] - rad[v]);
    if (!(gap > 0.0)) return std::nullopt;
    return std::min(0.5 * r, (1.0 - 1e-9) * gap);
  };
  auto any_within = [&](double r) {
    return std::any_of(dist.begin(), dist.end(), [&](double x) { return x < r; });
  };

  br.radii.push_back(1.0);
  while (br.radii.size() < n_max) {
    auto a = rho(br.radii.back());
    auto b = a ? rho(*a) : std::nullopt;
    if (!b) {
      br.exhausted = true;
      br.reason = "anchor lies inside a large ball";
      break;
    }
    const double r = 0.5 * *b;
    if (!any_within(2.0 * r)) {
      br.exhausted = true;
      br.reason = "no center within B(2 r_n)";
      break;
    }
    br.radii.push_back(r);
  }

  // Certificates, checked directly against the contact graph.
  br.disjoint.assign(br.radii.size(), 1);
  br.no_edge.assign(br.radii.size(), 1);
  for (std::size_t i = 1; i < br.radii.size(); ++i) {
    const double in_r = 2.0 * br.radii[i], out_r = br.radii[i - 1];
    auto inner = [&](std::size_t v) { return dist[v] < in_r; };
    auto outer = [&](std::size_t v) { return !(dist[v] < out_r); };
    for (std::size_t v = 0; v < n; ++v)
      if (inner(v) && outer(v)) br.disjoint[i] = 0;
    for (const auto& e : g.edges())
      if ((inner(e.u) && outer(e.v)) || (inner(e.v) && outer(e.u))) br.no_edge[i] = 0;
  }
  return br;
}

BlockingMetric blocking_metric(const Packing& p, const Graph& g, const BlockingRadii& br, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  if (!br.certified()) throw Error(ErrorCode::BadRadii, "blocking radii lack verified certificates");
  for (std::size_t i = 1; i < br.radii.size(); ++i)
    if (!(br.radii[i] < 0.5 * br.radii[i - 1])) throw Error(ErrorCode::BadRadii, "radii must satisfy r_n < r_(n-1)/2");
  const auto m_pack = packing_metric(p, g);
  const std::size_t n = p.size(), terms = br.radii.size();
  const int d = p.dimension;

  std::vector<double> dist(n);
  for (std::size_t v = 0; v < n; ++v) dist[v] = br.distance(p.balls[v].center);
  // phi_n tabulated per term so that d phi_n is evaluated exactly.
  std::vector<std::vector<double>> phi_n(terms, std::vector<double>(n));
  BlockingMetric out;
  out.delta = delta;
  out.phi = VertexFunction(n, 0.0);
  for (std::size_t k = 0; k < terms; ++k) {
    const double r = br.radii[k], w = 1.0 / (static_cast<double>(k + 1) * r);
    for (std::size_t v = 0; v < n; ++v) {
      phi_n[k][v] = psi(r, dist[v]);
      out.phi[v] += phi_n[k][v] * w;
    }
  }

  out.per_n_norm.assign(terms, 0.0);
  out.constant.assign(terms, 0.0);
  std::vector<double> m(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    std::size_t active = 0;
    for (std::size_t k = 0; k < terms; ++k) {
      const double dk = std::abs(phi_n[k][ed.u] - phi_n[k][ed.v]);
      if (dk == 0.0) continue;
      ++active;
      const double dd = std::pow(dk, d);
      out.per_n_norm[k] += dd;
      const double big = 3.0 * br.radii[k];
      double vol = 0.0;
      for (VertexId v : {ed.u, ed.v}) vol += lens_volume(d, br.scale * p.balls[v].r_in, big, dist[v]);
      if (vol > 0.0) out.constant[k] = std::max(out.constant[k], dd / vol);
    }
    if (active > 1) out.supports_disjoint = false;
    const double dphi = std::abs(out.phi[ed.u] - out.phi[ed.v]);
    out.dphi_norm += std::pow(dphi, d);
    m[e] = dphi + delta * m_pack[e];
  }
  for (std::size_t k = 0; k < terms; ++k) {
    out.decomposition += out.per_n_norm[k] / std::pow(static_cast<double>(k + 1) * br.radii[k], d);
    out.max_constant = std::max(out.max_constant, out.constant[k]);
  }
  out.metric = EdgeMetric(std::move(m));
  return out;
}

bool DivergenceReport::all_ok() const {
  for (const auto& pp : paths)
    if (!pp.telescoping_ok || !pp.meets_harmonic_bound || !pp.depth_monotone) return false;
  return !paths.empty();
}

DivergenceReport divergence_check(const Packing& p, const Graph& g, const BlockingMetric& bm,
                                  const BlockingRadii& br, const std::vector<Path>& paths) {
  if (g.vertex_count() != p.size() || bm.phi.size() != g.vertex_count() || bm.metric.size() != g.edge_count())
    throw Error(ErrorCode::PathMismatch, "graph, metric and phi sizes disagree");
  DivergenceReport report;
  report.annuli = br.radii.size();
  for (std::size_t j = 1; j <= report.annuli; ++j) report.harmonic += 1.0 / static_cast<double>(j);
  report.slack = report.annuli ? 1.0 / static_cast<double>(report.annuli) : 0.0;

  for (const auto& path : paths) {
    std::vector<EdgeId> edges;
    try {
      edges = path_edges(g, path);
    } catch (const Error& e) {
      throw Error(ErrorCode::PathMismatch, e.what());
    }
    if (path.vertices.empty()) throw Error(ErrorCode::PathMismatch, "empty path");
    PathProfile prof;
    prof.path = path;
    prof.depth_phi.assign(report.annuli, std::numeric_limits<double>::quiet_NaN());
    double len = 0.0;
    const double phi0 = bm.phi[path.vertices.front()];
    for (std::size_t k = 0; k < path.vertices.size(); ++k) {
      const VertexId v = path.vertices[k];
      if (k > 0) len += bm.metric[edges[k - 1]];
      prof.length.push_back(len);
      prof.phi.push_back(bm.phi[v]);
      if (len < std::abs(bm.phi[v] - phi0) * (1.0 - 1e-12)) prof.telescoping_ok = false;
      const double dv = br.distance(p.balls[v].center);
      for (std::size_t n = 0; n < report.annuli; ++n)
        if (std::isnan(prof.depth_phi[n]) && dv <= br.radii[n]) prof.depth_phi[n] = bm.phi[v];
    }
    prof.phi_end = prof.phi.back();
    prof.meets_harmonic_bound = prof.phi_end >= report.harmonic - report.slack - 1e-12;
    // Entered annuli form a prefix 1..k with strictly increasing phi.
    bool ok = true, open = true;
    double last = -std::numeric_limits<double>::infinity();
    std::size_t entered = 0;
    for (std::size_t n = 0; n < report.annuli; ++n) {
      if (std::isnan(prof.depth_phi[n])) {
        open = false;
        continue;
      }
      if (!open || !(prof.depth_phi[n] > last)) ok = false;
      last = prof.depth_phi[n];
      ++entered;
    }
    prof.depth_monotone = ok && entered + 1 >= report.annuli;
    report.paths.push_back(std::move(prof));
  }
  return report;
}

std::vector<Path> anchor_paths(const Packing& p, const Graph& g, const BlockingRadii& br, std::size_t count) {
  if (g.vertex_count() != p.size()) throw Error(ErrorCode::GraphMismatch, "graph and packing sizes differ");
  const std::size_t n = p.size();
  std::vector<double> dist(n);
  for (std::size_t v = 0; v < n; ++v) dist[v] = br.distance(p.balls[v].center);
  const VertexId end = static_cast<VertexId>(std::min_element(dist.begin(), dist.end()) - dist.begin());

  // Farthest-point sampling of start vertices, seeded by the farthest center.
  std::vector<VertexId> starts;
  std::vector<double> spread(n, std::numeric_limits<double>::infinity());
  VertexId first = static_cast<VertexId>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  while (starts.size() < count && starts.size() + 1 < n) {
    VertexId pick = first;
    if (!starts.empty()) {
      double best = -1.0;
      for (VertexId v = 0; v < n; ++v) {
        if (v == end) continue;
        const double score = std::min(spread[v], dist[v]);
        if (score > best) {
          best = score;
          pick = v;
        }
      }
      if (best <= 0.0) break;
    }
    starts.push_back(pick);
    for (VertexId v = 0; v < n; ++v)
      spread[v] = std::min(spread[v], ppot::distance(p.balls[v].center, p.balls[pick].center));
  }

  std::vector<VertexId> parent(n, n);
  std::queue<VertexId> q;
  parent[end] = end;
  q.push(end);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (const auto& nb : g.neighbors(v))
      if (parent[nb.vertex] == n) {
        parent[nb.vertex] = v;
        q.push(nb.vertex);
      }
  }
  std::vector<Path> out;
  for (VertexId s : starts) {
    Path path;
    for (VertexId v = s; v != end; v = parent[v]) path.vertices.push_back(v);
    path.vertices.push_back(end);
    out.push_back(std::move(path));
  }
  return out;
}

}  // namespace ppot
