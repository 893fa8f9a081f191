#include "ppot/circlepack.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>

#include "ppot/error.hpp"

namespace ppot {

namespace {

using Face = std::array<VertexId, 3>;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::NotTriangulation, what); }

std::uint64_t directed_key(VertexId a, VertexId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

}  // namespace

Triangulation make_triangulation(Graph graph, VertexSet boundary, std::optional<std::vector<Face>> given) {
  const std::size_t n = graph.vertex_count();
  if (n >= (std::size_t{1} << 32)) fail("too many vertices");
  if (boundary.size() < 3) fail("boundary cycle needs at least 3 vertices");
  std::vector<char> on_boundary(n, 0);
  for (VertexId v : boundary) {
    if (v >= n) fail("boundary vertex out of range");
    if (on_boundary[v]) fail("boundary vertex " + std::to_string(v) + " repeats");
    on_boundary[v] = 1;
  }
  std::vector<char> boundary_edge(graph.edge_count(), 0);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    auto e = graph.find_edge(boundary[i], boundary[(i + 1) % boundary.size()]);
    if (!e) fail("boundary vertices " + std::to_string(boundary[i]) + " and " +
                 std::to_string(boundary[(i + 1) % boundary.size()]) + " are not adjacent");
    boundary_edge[*e] = 1;
  }

  std::vector<Face> faces;
  if (given) {
    faces = std::move(*given);
    for (const auto& f : faces) {
      for (VertexId v : f)
        if (v >= n) fail("face vertex out of range");
      if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) fail("degenerate face");
      if (!graph.adjacent(f[0], f[1]) || !graph.adjacent(f[1], f[2]) || !graph.adjacent(f[0], f[2]))
        fail("face is not a triangle of the graph");
    }
  } else {
    for (const auto& e : graph.edges()) {
      for (const auto& nb : graph.neighbors(e.v)) {
        if (nb.vertex <= e.v || !graph.adjacent(e.u, nb.vertex)) continue;
        Face f{e.u, e.v, nb.vertex};
        if (boundary.size() == 3 && on_boundary[f[0]] && on_boundary[f[1]] && on_boundary[f[2]]) continue;
        faces.push_back(f);
      }
    }
  }
  if (faces.empty()) fail("no interior faces");

  // Edge-face incidence.
  std::vector<std::vector<std::size_t>> edge_faces(graph.edge_count());
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (int k = 0; k < 3; ++k) edge_faces[*graph.find_edge(faces[i][k], faces[i][(k + 1) % 3])].push_back(i);
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const std::size_t want = boundary_edge[e] ? 1 : 2;
    if (edge_faces[e].size() != want)
      fail("edge " + std::to_string(graph.edge(e).u) + "-" + std::to_string(graph.edge(e).v) + " lies in " +
           std::to_string(edge_faces[e].size()) + " faces, expected " + std::to_string(want));
  }
  const long euler = static_cast<long>(n) - static_cast<long>(graph.edge_count()) + static_cast<long>(faces.size()) + 1;
  if (euler != 2) fail("Euler characteristic is " + std::to_string(euler));

  // Orient by propagation across shared edges.
  std::vector<char> oriented(faces.size(), 0);
  std::queue<std::size_t> q;
  oriented[0] = 1;
  q.push(0);
  std::size_t reached = 1;
  while (!q.empty()) {
    const std::size_t i = q.front();
    q.pop();
    for (int k = 0; k < 3; ++k) {
      const VertexId a = faces[i][k], b = faces[i][(k + 1) % 3];
      for (std::size_t j : edge_faces[*graph.find_edge(a, b)]) {
        if (j == i) continue;
        auto& f = faces[j];
        // The neighbor must traverse the shared edge as b -> a.
        bool forward = false;
        for (int t = 0; t < 3; ++t) forward = forward || (f[t] == a && f[(t + 1) % 3] == b);
        if (oriented[j]) {
          if (forward) fail("faces cannot be oriented consistently");
          continue;
        }
        if (forward) std::swap(f[1], f[2]);
        oriented[j] = 1;
        ++reached;
        q.push(j);
      }
    }
  }
  if (reached != faces.size()) fail("faces are not connected across edges");

  std::vector<std::vector<VertexId>> flower(n);
  {
    std::vector<std::map<VertexId, VertexId>> succ(n);
    for (const auto& f : faces)
      for (int k = 0; k < 3; ++k) succ[f[k]][f[(k + 1) % 3]] = f[(k + 2) % 3];
    for (VertexId v = 0; v < n; ++v) {
      const std::size_t deg = graph.degree(v);
      const auto& s = succ[v];
      if (s.size() != (on_boundary[v] ? deg - 1 : deg))
        fail("vertex " + std::to_string(v) + " has an inconsistent number of faces");
      VertexId start = graph.neighbors(v)[0].vertex;
      if (on_boundary[v]) {
        std::map<VertexId, int> indeg;
        for (const auto& [a, b] : s) ++indeg[b];
        bool found = false;
        for (const auto& nb : graph.neighbors(v))
          if (!indeg.count(nb.vertex)) {
            if (found) fail("link of boundary vertex " + std::to_string(v) + " is not a fan");
            start = nb.vertex;
            found = true;
          }
        if (!found) fail("link of boundary vertex " + std::to_string(v) + " is not a fan");
      }
      std::vector<VertexId> cyc{start};
      VertexId cur = start;
      for (std::size_t k = 1; k < deg; ++k) {
        auto it = s.find(cur);
        if (it == s.end()) fail("link of vertex " + std::to_string(v) + " is broken");
        cur = it->second;
        cyc.push_back(cur);
      }
      if (!on_boundary[v] && s.at(cur) != start) fail("link of vertex " + std::to_string(v) + " is not a cycle");
      auto sorted = cyc;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail("link of vertex " + std::to_string(v) + " repeats a neighbor");
      flower[v] = std::move(cyc);
    }
  }

  Triangulation t;
  t.graph = std::move(graph);
  t.boundary = std::move(boundary);
  t.faces = std::move(faces);
  t.on_boundary = std::move(on_boundary);
  t.flower = std::move(flower);
  return t;
}

Triangulation triangulation_from_file(const GraphFile& file) {
  auto range = file.directives.equal_range("boundary");
  if (range.first == range.second) fail("graph file has no 'boundary:' line");
  if (std::next(range.first) != range.second) fail("graph file has more than one 'boundary:' line");
  VertexSet boundary;
  for (const auto& tok : range.first->second) boundary.push_back(parse_index(tok));
  std::optional<std::vector<Face>> faces;
  auto fr = file.directives.equal_range("face");
  if (fr.first != fr.second) {
    faces.emplace();
    for (auto it = fr.first; it != fr.second; ++it) {
      if (it->second.size() != 3) fail("face line needs three vertices");
      faces->push_back({parse_index(it->second[0]), parse_index(it->second[1]), parse_index(it->second[2])});
    }
  }
  return make_triangulation(file.graph, std::move(boundary), std::move(faces));
}

Triangulation triangulation_from_disk(const GeneratedGraph& disk) {
  if (disk.family != Family::Disk) throw Error(ErrorCode::InvalidArgument, "not a triangulated disk");
  std::vector<Face> faces;
  for (const auto& f : disk.faces) {
    if (f.size() != 3) fail("disk face is not a triangle");
    faces.push_back({f[0], f[1], f[2]});
  }
  return make_triangulation(disk.graph, disk.boundary, std::move(faces));
}

double tangency_angle(double r_u, double r_v, double r_w) {
  const double x = (r_v * r_w) / ((r_u + r_v) * (r_u + r_w));
  return 2.0 * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0)));
}

double angle_sum(double r, std::span<const double> cycle) {
  double s = 0.0;
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) s += tangency_angle(r, cycle[i], cycle[(i + 1) % k]);
  return s;
}

namespace {

// Angle sum and its derivative with respect to log r.
std::pair<double, double> angle_sum_dlog(double r, std::span<const double> cycle) {
  double s = 0.0, d = 0.0;
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double a = cycle[i], b = cycle[(i + 1) % k];
    const double x = (a * b) / ((r + a) * (r + b));
    s += 2.0 * std::asin(std::sqrt(x));
    // d/dr 2 asin(sqrt x) = x' / sqrt(x (1 - x)), x' = -x (1/(r+a) + 1/(r+b))
    const double dx = -x * (1.0 / (r + a) + 1.0 / (r + b));
    const double denom = std::sqrt(x * (1.0 - x));
    if (denom > 0.0) d += r * dx / denom;
  }
  return {s, d};
}

// Radius at which the angle sum equals 2 pi, starting from `r`.
double solve_radius(double r, std::span<const double> cycle) {
  constexpr double target = 2.0 * std::numbers::pi;
  double s = std::log(r);
  auto g = [&](double ls, double* dg) {
    auto [a, d] = angle_sum_dlog(std::exp(ls), cycle);
    if (dg) *dg = d;
    return a - target;
  };
  double g0 = g(s, nullptr);
  if (g0 == 0.0) return r;
  // Bracket: the angle sum decreases in r.
  double lo = s, hi = s, step = 0.5;
  if (g0 > 0.0) {
    do hi += (step *= 2.0); while (g(hi, nullptr) > 0.0);
  } else {
    do lo -= (step *= 2.0); while (g(lo, nullptr) < 0.0);
  }
  for (int it = 0; it < 200; ++it) {
    double dg = 0.0;
    const double v = g(s, &dg);
    if (v > 0.0) lo = s; else hi = s;
    if (std::abs(v) < 1e-15 || hi - lo < 1e-15) break;
    double next = dg < 0.0 ? s - v / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  return std::exp(s);
}

}  // namespace

CirclePacking pack_disk(const Triangulation& t, std::span<const double> boundary_radii, const PackConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (boundary_radii.size() != t.boundary.size())
    throw Error(ErrorCode::InvalidArgument, "one radius per boundary vertex required");
  const std::size_t n = t.graph.vertex_count();
  std::vector<double> r(n, 0.0);
  double log_mean = 0.0;
  for (std::size_t i = 0; i < t.boundary.size(); ++i) {
    const double x = boundary_radii[i];
    if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "boundary radii must be positive");
    r[t.boundary[i]] = x;
    log_mean += std::log(x);
  }
  log_mean /= static_cast<double>(t.boundary.size());
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < n; ++v)
    if (!t.on_boundary[v]) {
      interior.push_back(v);
      r[v] = std::exp(log_mean);
    }

  CirclePacking out;
  std::vector<double> cycle;
  auto gather = [&](VertexId v) {
    cycle.clear();
    for (VertexId u : t.flower[v]) cycle.push_back(r[u]);
  };
  auto residual = [&] {
    double worst = 0.0;
    for (VertexId v : interior) {
      gather(v);
      worst = std::max(worst, std::abs(angle_sum(r[v], cycle) - 2.0 * std::numbers::pi));
    }
    return worst;
  };

  out.angle_residual = residual();
  while (out.angle_residual > cfg.tolerance && out.sweeps < cfg.max_sweeps) {
    ++out.sweeps;
    for (VertexId v : interior) {
      gather(v);
      r[v] = solve_radius(r[v], cycle);
    }
    out.angle_residual = residual();
  }
  out.converged = out.angle_residual <= cfg.tolerance;

  // Layout face by face from the directed edge 0 -> flower[0][0].
  std::map<std::uint64_t, std::size_t> face_of;
  for (std::size_t i = 0; i < t.faces.size(); ++i)
    for (int k = 0; k < 3; ++k) face_of[directed_key(t.faces[i][k], t.faces[i][(k + 1) % 3])] = i;
  std::vector<std::array<double, 2>> z(n, {0.0, 0.0});
  std::vector<char> placed(n, 0);
  const VertexId v0 = 0, v1 = t.flower[0].front();
  z[v1] = {r[v0] + r[v1], 0.0};
  placed[v0] = placed[v1] = 1;

  auto place_third = [&](VertexId a, VertexId b, VertexId c) {
    const double dx = z[b][0] - z[a][0], dy = z[b][1] - z[a][1];
    const double len = std::hypot(dx, dy);
    const double alpha = tangency_angle(r[a], r[b], r[c]);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double ux = dx / len, uy = dy / len;
    const double d = r[a] + r[c];
    z[c] = {z[a][0] + d * (ca * ux - sa * uy), z[a][1] + d * (sa * ux + ca * uy)};
    placed[c] = 1;
  };

  std::vector<char> done(t.faces.size(), 0);
  std::queue<std::pair<VertexId, VertexId>> edges;  // directed, both ends placed
  edges.push({v0, v1});
  while (!edges.empty()) {
    auto [a, b] = edges.front();
    edges.pop();
    auto it = face_of.find(directed_key(a, b));
    if (it == face_of.end() || done[it->second]) continue;
    done[it->second] = 1;
    const auto& f = t.faces[it->second];
    int k = 0;
    while (f[k] != a) ++k;
    const VertexId c = f[(k + 2) % 3];
    if (!placed[c]) place_third(a, b, c);
    // Neighbors across each edge, entered in their own orientation.
    edges.push({b, a});
    edges.push({c, b});
    edges.push({a, c});
  }
  for (VertexId v = 0; v < n; ++v)
    if (!placed[v]) throw Error(ErrorCode::NotTriangulation, "layout did not reach vertex " + std::to_string(v));

  out.radii = r;
  out.packing.dimension = 2;
  out.packing.roundness = 1.0;
  out.packing.balls.reserve(n);
  for (VertexId v = 0; v < n; ++v) out.packing.balls.push_back({{z[v][0], z[v][1]}, r[v], r[v]});
  for (const auto& e : t.graph.edges()) {
    const double sum = r[e.u] + r[e.v];
    const double d = std::hypot(z[e.u][0] - z[e.v][0], z[e.u][1] - z[e.v][1]);
    out.tangency_residual = std::max(out.tangency_residual, std::abs(d - sum) / sum);
  }
  return out;
}

}  // namespace ppot
