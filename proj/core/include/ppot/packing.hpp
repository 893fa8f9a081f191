#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppot/graph.hpp"

namespace ppot {

/// A quasi-ball: the body contains the inner ball and lies inside the outer
/// ball, both centered at `center`. Disjointness is checked on inner balls
/// and tangency on outer spheres.
struct Ball {
  std::vector<double> center;
  double r_in = 1.0;
  double r_out = 1.0;

  double diameter() const noexcept { return 2.0 * r_out; }
};

struct Packing {
  int dimension = 2;
  std::vector<Ball> balls;
  /// Declared bound on r_out / r_in.
  double roundness = 1.0;

  /// Throws InvalidArgument on dimension mismatches, nonpositive radii,
  /// r_out < r_in or a ratio above the declared roundness.
  void validate() const;
  std::size_t size() const noexcept { return balls.size(); }
};

/// Text format: header `packing <d> <count> <roundness>`, then one line per
/// ball `x_1 .. x_d r_in r_out`. Blank lines and lines starting with '#' are
/// skipped.
Packing read_packing(std::istream& in);
Packing read_packing_file(const std::string& path);
void write_packing(std::ostream& out, const Packing& p);

struct Overlap {
  std::size_t a = 0, b = 0;
  /// r_in(a) + r_in(b) - |z(a) - z(b)|
  double depth = 0.0;
};

struct PackingReport {
  std::vector<Overlap> violations;
  double realized_roundness = 1.0;

  bool valid() const noexcept { return violations.empty(); }
};

/// All pairs whose inner balls overlap by more than tol. Exhaustive pair scan
/// up to kPairScanLimit balls, sweep-and-prune along the first axis beyond.
PackingReport verify_packing(const Packing& p, double tol);

inline constexpr std::size_t kPairScanLimit = 20000;

/// Tangency tolerance for exact or synthetic packings.
inline constexpr double kExactTangencyTolerance = 1e-9;
/// Tangency tolerance for packings produced by the circle packing solver.
inline constexpr double kSolvedTangencyTolerance = 1e-6;

struct ContactGraph {
  /// Vertex i is ball i.
  std::vector<Edge> edges;
  /// Set when the contact graph is connected (Graph requires it).
  std::optional<Graph> graph;
  std::size_t max_degree = 0;
};

/// Edge iff | |z(u)-z(v)| - (r_out(u)+r_out(v)) | <= tol * (r_out(u)+r_out(v)).
ContactGraph contact_graph(const Packing& p, double tol);

/// m(e) = diam(P_u) + diam(P_v) = 2 r_out(u) + 2 r_out(v). Throws GraphMismatch
/// when g has the wrong size or an edge joins balls that are not in contact.
EdgeMetric packing_metric(const Packing& p, const Graph& g);

/// (sum_e m(e)^p)^(1/p)
double metric_lp_norm(std::span<const double> m, double p);
double metric_lp_norm(const EdgeMetric& m, double p);

struct LiftedBall {
  /// Inverse stereographic image of the center on the unit sphere in R^(d+1);
  /// the origin maps to the south pole (0, .., 0, -1).
  std::vector<double> point;
  /// Conformal factor 2 / (1 + |z|^2).
  double factor = 2.0;
  /// diam * factor
  double chordal_estimate = 0.0;
  /// Chord between the images of the two radial extreme points.
  double chordal_exact = 0.0;
};

struct StereographicLift {
  std::vector<LiftedBall> balls;
  /// max |exact - estimate| / diam^2 over balls
  double second_order_coefficient = 0.0;
  /// sum of chordal_exact^d
  double volume_proxy = 0.0;
};

StereographicLift stereographic_lift(const Packing& p);

/// psi_r(z) = r on B(r), 2r - |z - z_p| on the annulus, 0 beyond 2r.
double psi(double r, double distance);
double psi(double r, std::span<const double> z, std::span<const double> anchor);

/// Radii r_1 = 1 > r_2 > .. in rescaled coordinates y = scale * (z - z_p).
struct BlockingRadii {
  std::vector<double> anchor;
  double scale = 1.0;
  std::vector<double> radii;
  /// Per n (index n-1; n = 1 holds vacuously): {z in B(2 r_n)} and
  /// {z outside B(r_(n-1))} are disjoint and no contact edge joins them.
  std::vector<char> disjoint;
  std::vector<char> no_edge;
  bool exhausted = false;
  std::string reason;

  /// Rescaled distance of a point from the anchor.
  double distance(std::span<const double> z) const;
  bool certified() const;
};

/// Coordinates are first rescaled so that the farthest center lies at
/// distance 2 from the anchor. Then r_1 = 1 and r_n = rho(rho(r_(n-1))) / 2,
/// where rho(r) = min(r / 2, (1 - 1e-9) * gap) and gap is the distance from
/// the anchor to the nearest outer ball of diameter >= r / 2. Construction
/// stops (exhausted) when the anchor lies in such a ball, or when B(2 r_n)
/// would contain no center.
BlockingRadii blocking_radii(const Packing& p, const Graph& g, std::span<const double> anchor, std::size_t n_max);

struct BlockingMetric {
  EdgeMetric metric;
  VertexFunction phi;
  /// No edge has two distinct n with d phi_n(e) != 0.
  bool supports_disjoint = true;
  /// sum_e |d phi(e)|^d
  double dphi_norm = 0.0;
  /// sum_n ||d phi_n||_d^d / (n r_n)^d
  double decomposition = 0.0;
  /// ||d phi_n||_d^d per n
  std::vector<double> per_n_norm;
  /// max over edges of |d phi_n(e)|^d / vol((inner_u u inner_v) n B(3 r_n)),
  /// per n; measured, in rescaled units.
  std::vector<double> constant;
  double max_constant = 0.0;
  double delta = 1e-6;
};

/// m_p(e) = |d phi(e)| + delta * m_pack(e), phi = sum_n psi_(r_n)(z) / (n r_n).
/// Throws BadRadii when the radii lack verified certificates.
BlockingMetric blocking_metric(const Packing& p, const Graph& g, const BlockingRadii& br, double delta = 1e-6);

struct PathProfile {
  Path path;
  /// partial m_p-lengths, one per vertex (0 at the start)
  std::vector<double> length;
  std::vector<double> phi;
  /// phi at the first vertex inside closed B(r_n), per n; NaN if never
  /// entered.
  std::vector<double> depth_phi;
  bool telescoping_ok = true;
  double phi_end = 0.0;
  bool meets_harmonic_bound = false;
  bool depth_monotone = false;
};

struct DivergenceReport {
  std::size_t annuli = 0;
  double harmonic = 0.0;  // H_N
  /// Slack 1/N: a path end in B(2 r_N) misses at most the last term.
  double slack = 0.0;
  std::vector<PathProfile> paths;

  bool all_ok() const;
};

/// Throws PathMismatch when a path is not a path of g or the sizes of g,
/// m_p and phi disagree.
DivergenceReport divergence_check(const Packing& p, const Graph& g, const BlockingMetric& bm,
                                  const BlockingRadii& br, const std::vector<Path>& paths);

/// `count` hop-shortest paths from the centers farthest from the anchor to
/// the vertex nearest it. Deterministic.
std::vector<Path> anchor_paths(const Packing& p, const Graph& g, const BlockingRadii& br, std::size_t count);

}  // namespace ppot
