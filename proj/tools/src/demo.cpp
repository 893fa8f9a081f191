#include "ppot/cli/demo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "ppot/error.hpp"

namespace ppot::cli {
namespace {

using Complex = std::complex<double>;

Complex lattice_point(const std::vector<long>& axial, double lattice_scale) {
  const double q = static_cast<double>(axial[0]), r = static_cast<double>(axial[1]);
  return Complex(q + 0.5 * r, r * std::numbers::sqrt3 / 2.0) / lattice_scale;
}

double center_distance(const Ball& b, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (b.center[k] - x[k]) * (b.center[k] - x[k]);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> koebe_boundary_radii(const GeneratedGraph& disk, const Triangulation& t, double rho,
                                         double lattice_scale) {
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidArgument, "rho must lie in [0, 1)");
  if (!(lattice_scale > disk.param("layers")))
    throw Error(ErrorCode::InvalidArgument, "lattice scale must exceed the layer count");
  std::vector<double> radii;
  radii.reserve(t.boundary.size());
  for (VertexId v : t.boundary) {
    const Complex z = lattice_point(disk.coords[v], lattice_scale);
    const Complex w = 1.0 - rho * z;
    const Complex derivative = (1.0 + rho * z) / (w * w * w);
    radii.push_back(std::abs(derivative) / (2.0 * lattice_scale));
  }
  return radii;
}

std::vector<double> find_anchor(const Packing& p, const Graph& g, std::size_t max_annuli) {
  if (p.dimension != 2) throw Error(ErrorCode::InvalidArgument, "anchor search is planar");
  std::size_t smallest = 0;
  for (std::size_t v = 1; v < p.size(); ++v)
    if (p.balls[v].r_out < p.balls[smallest].r_out) smallest = v;
  const Ball& s = p.balls[smallest];
  constexpr std::array<double, 13> offsets{1.001, 1.01, 1.05, 1.1, 1.2, 1.4, 1.7, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0};

  std::vector<double> best;
  std::size_t best_count = 0;
  for (double k : offsets) {
    for (int deg = 0; deg < 360; ++deg) {
      const double th = deg * std::numbers::pi / 180.0;
      const std::vector<double> x{s.center[0] + k * s.r_out * std::cos(th), s.center[1] + k * s.r_out * std::sin(th)};
      const bool covered = std::any_of(p.balls.begin(), p.balls.end(),
                                       [&](const Ball& b) { return center_distance(b, x) < b.r_out; });
      if (covered) continue;
      const auto br = blocking_radii(p, g, x, max_annuli);
      if (!br.certified()) continue;
      if (br.radii.size() > best_count) {
        best_count = br.radii.size();
        best = x;
      }
    }
  }
  if (best.empty()) throw Error(ErrorCode::EmptyTarget, "no admissible anchor near the smallest circle");
  return best;
}

BoundaryProxy packing_proxy(const Packing& p, std::span<const double> anchor, double far_fraction,
                            std::size_t scale_count) {
  const std::size_t n = p.size();
  if (!(far_fraction > 0.0 && far_fraction < 1.0)) throw Error(ErrorCode::InvalidArgument, "far fraction must lie in (0, 1)");
  if (scale_count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two scales");
  std::vector<std::size_t> order(n);
  std::vector<double> dist(n);
  for (std::size_t v = 0; v < n; ++v) {
    order[v] = v;
    dist[v] = center_distance(p.balls[v], anchor);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  const auto far_count = static_cast<std::size_t>(std::ceil(far_fraction * static_cast<double>(n)));
  if (far_count >= n) throw Error(ErrorCode::InvalidArgument, "far set would cover every vertex");

  BoundaryProxy proxy;
  std::vector<std::vector<double>> positions;
  positions.reserve(n);
  for (const auto& b : p.balls) positions.push_back(b.center);
  proxy.anchor = EuclideanAnchor{std::vector<double>(anchor.begin(), anchor.end()), std::move(positions)};
  for (std::size_t i = n - far_count; i < n; ++i) proxy.far_set.push_back(order[i]);
  std::sort(proxy.far_set.begin(), proxy.far_set.end());
  const double hi = dist[order[n - far_count - 1]], lo = dist[order[0]];
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "scales collapse: nearest and median distances agree");
  for (std::size_t i = 0; i < scale_count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(scale_count - 1);
    proxy.scales.push_back(hi * std::pow(lo / hi, t));
  }
  // The geometric endpoints must still capture their vertices after rounding.
  proxy.scales.front() = hi;
  proxy.scales.back() = lo;
  return proxy;
}

DemoResult run_obstruction_demo(const DemoConfig& cfg) {
  DemoResult out;
  out.disk = triangulated_disk(cfg.layers);
  out.triangulation = triangulation_from_disk(out.disk);
  const auto boundary = koebe_boundary_radii(out.disk, out.triangulation, cfg.rho, cfg.lattice_scale);
  PackConfig pc;
  pc.tolerance = cfg.tolerance;
  out.packing = pack_disk(out.triangulation, boundary, pc);
  if (!out.packing.converged)
    throw Error(ErrorCode::NoConvergence, "circle packing stopped with angle residual " +
                                              std::to_string(out.packing.angle_residual));
  const Packing& pk = out.packing.packing;
  const Graph& g = out.triangulation.graph;
  out.report = verify_packing(pk, 1e-12);

  const auto contacts = contact_graph(pk, kSolvedTangencyTolerance);
  out.contact_isomorphic = contacts.edges.size() == g.edge_count() &&
                           std::all_of(contacts.edges.begin(), contacts.edges.end(),
                                       [&](const Edge& e) { return g.adjacent(e.u, e.v); });

  out.metric = packing_metric(pk, g);
  out.metric_norm = metric_lp_norm(out.metric, 2.0);
  out.anchor = find_anchor(pk, g, cfg.max_annuli);
  out.radii = blocking_radii(pk, g, out.anchor, cfg.max_annuli);
  out.blocking = blocking_metric(pk, g, out.radii);
  const auto paths = anchor_paths(pk, g, out.radii, cfg.paths);
  out.divergence = divergence_check(pk, g, out.blocking, out.radii, paths);

  ModulusConfig mc;
  mc.p = cfg.p;
  out.resolve = resolving_check(g, out.metric, packing_proxy(pk, out.anchor, cfg.far_fraction, cfg.scale_count), mc);
  return out;
}

}  // namespace ppot::cli
