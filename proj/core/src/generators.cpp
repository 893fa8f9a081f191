#include "ppot/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "ppot/error.hpp"

namespace ppot {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Path: return "path";
    case Family::Lattice: return "lattice";
    case Family::Tree: return "tree";
    case Family::Product: return "product";
    case Family::Tessellation: return "tessellation";
    case Family::Disk: return "disk";
  }
  return "unknown";
}

std::size_t default_vertex_budget() {
  static const std::size_t budget = [] {
    if (const char* env = std::getenv("PPOT_VERTEX_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{4'000'000};
  }();
  return budget;
}

long GeneratedGraph::param(std::string_view name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw Error(ErrorCode::InvalidArgument, "no parameter " + std::string(name));
}

namespace {

void check_budget(double count, std::size_t budget, std::string_view what) {
  if (count > static_cast<double>(budget)) {
    std::ostringstream ss;
    ss << what << " needs " << count << " vertices, budget is " << budget;
    throw Error(ErrorCode::SizeLimit, ss.str());
  }
}

std::string coord_label(const std::vector<long>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

}  // namespace

GeneratedGraph path_graph(std::size_t vertex_count, std::size_t budget) {
  if (vertex_count < 1) throw Error(ErrorCode::InvalidArgument, "path needs at least one vertex");
  check_budget(static_cast<double>(vertex_count), budget, "path");
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  GeneratedGraph out;
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (i + 1 < vertex_count) edges.push_back({i, i + 1});
    out.coords.push_back({static_cast<long>(i)});
    labels.push_back(std::to_string(i));
  }
  out.graph = Graph(vertex_count, std::move(edges), std::move(labels));
  out.family = Family::Path;
  out.params = {{"n", static_cast<long>(vertex_count)}};
  out.boundary = vertex_count > 1 ? VertexSet{0, vertex_count - 1} : VertexSet{0};
  return out;
}

GeneratedGraph lattice_box(int dimension, long radius, std::size_t budget) {
  if (dimension < 1 || radius < 1) throw Error(ErrorCode::InvalidArgument, "lattice_box needs d >= 1, R >= 1");
  const long side = 2 * radius + 1;
  check_budget(std::pow(static_cast<double>(side), dimension), budget, "lattice_box");
  std::size_t n = 1;
  for (int i = 0; i < dimension; ++i) n *= static_cast<std::size_t>(side);

  GeneratedGraph out;
  out.family = Family::Lattice;
  out.params = {{"d", dimension}, {"R", radius}};
  out.coords.resize(n);
  std::vector<std::string> labels(n);
  std::vector<Edge> edges;
  edges.reserve(n * static_cast<std::size_t>(dimension));

  // Index = sum_k (x_k + R) * side^(d-1-k): lexicographic order.
  std::vector<std::size_t> stride(dimension, 1);
  for (int k = dimension - 2; k >= 0; --k) stride[k] = stride[k + 1] * static_cast<std::size_t>(side);
  std::vector<long> c(dimension, -radius);
  for (std::size_t v = 0; v < n; ++v) {
    out.coords[v] = c;
    labels[v] = coord_label(c);
    bool on_face = false;
    for (int k = 0; k < dimension; ++k) {
      if (c[k] < radius) edges.push_back({v, v + stride[k]});
      on_face = on_face || std::abs(c[k]) == radius;
    }
    if (on_face) out.boundary.push_back(v);
    bool all_zero = std::all_of(c.begin(), c.end(), [](long x) { return x == 0; });
    if (all_zero) out.center = v;
    for (int k = dimension - 1; k >= 0; --k) {
      if (++c[k] <= radius) break;
      c[k] = -radius;
    }
  }
  out.graph = Graph(n, std::move(edges), std::move(labels));
  return out;
}

GeneratedGraph regular_tree(int branching, int depth, std::size_t budget) {
  if (branching < 2 || depth < 1) throw Error(ErrorCode::InvalidArgument, "regular_tree needs b >= 2, depth >= 1");
  const int inner_children = std::max(branching - 1, 2);
  double total = 1.0, layer = 1.0;
  for (int k = 1; k <= depth; ++k) {
    layer *= (k == 1 ? branching : inner_children);
    total += layer;
  }
  check_budget(total, budget, "regular_tree");

  GeneratedGraph out;
  out.family = Family::Tree;
  out.params = {{"b", branching}, {"depth", depth}};
  std::vector<Edge> edges;
  std::vector<std::string> labels{"root"};
  out.coords.push_back({0, 0});
  std::vector<VertexId> current{0};
  VertexId next = 1;
  for (int k = 1; k <= depth; ++k) {
    std::vector<VertexId> layer_vertices;
    const int children = (k == 1 ? branching : inner_children);
    long index = 0;
    for (VertexId parent : current) {
      for (int c = 0; c < children; ++c) {
        edges.push_back({parent, next});
        out.coords.push_back({k, index});
        labels.push_back(labels[parent] == "root" ? std::to_string(c) : labels[parent] + "." + std::to_string(c));
        layer_vertices.push_back(next++);
        ++index;
      }
    }
    current = std::move(layer_vertices);
  }
  out.boundary = current;
  out.center = 0;
  out.graph = Graph(next, std::move(edges), std::move(labels));
  return out;
}

namespace {

// Orders the vertices of a path graph from its lower-index endpoint, or
// returns nullopt when h is not a path.
std::optional<std::vector<long>> path_positions(const Graph& h) {
  const std::size_t n = h.vertex_count();
  if (h.edge_count() + 1 != n) return std::nullopt;
  if (n == 1) return std::vector<long>{0};
  VertexId start = n;
  for (VertexId v = 0; v < n; ++v) {
    if (h.degree(v) > 2) return std::nullopt;
    if (h.degree(v) == 1 && start == n) start = v;
  }
  std::vector<long> pos(n, -1);
  VertexId prev = n, cur = start;
  for (long i = 0; i < static_cast<long>(n); ++i) {
    pos[cur] = i;
    VertexId nxt = n;
    for (const auto& nb : h.neighbors(cur))
      if (nb.vertex != prev) nxt = nb.vertex;
    prev = cur;
    cur = nxt;
    if (cur == n) break;
  }
  const long half = static_cast<long>(n - 1) / 2;
  for (auto& x : pos) x -= half;
  return pos;
}

}  // namespace

GeneratedGraph cartesian_product(const Graph& g, const Graph& h, std::size_t budget) {
  const std::size_t ng = g.vertex_count(), nh = h.vertex_count();
  check_budget(static_cast<double>(ng) * static_cast<double>(nh), budget, "cartesian_product");
  std::vector<Edge> edges;
  edges.reserve(ng * h.edge_count() + nh * g.edge_count());
  for (VertexId a = 0; a < ng; ++a) {
    for (const auto& e : h.edges()) edges.push_back({a * nh + e.u, a * nh + e.v});
  }
  for (const auto& e : g.edges()) {
    for (VertexId x = 0; x < nh; ++x) edges.push_back({e.u * nh + x, e.v * nh + x});
  }
  GeneratedGraph out;
  out.family = Family::Product;
  out.params = {{"n_first", static_cast<long>(ng)}, {"n_second", static_cast<long>(nh)}};
  out.second_factor_size = nh;
  out.coords.reserve(ng * nh);
  std::vector<std::string> labels;
  labels.reserve(ng * nh);
  for (VertexId a = 0; a < ng; ++a) {
    for (VertexId x = 0; x < nh; ++x) {
      out.coords.push_back({static_cast<long>(a), static_cast<long>(x)});
      std::string la = g.has_labels() ? g.label(a) : std::to_string(a);
      std::string lx = h.has_labels() ? h.label(x) : std::to_string(x);
      labels.push_back(la + "|" + lx);
    }
  }
  if (auto pos = path_positions(h)) {
    std::vector<long> z(ng * nh);
    for (VertexId a = 0; a < ng; ++a)
      for (VertexId x = 0; x < nh; ++x) z[a * nh + x] = (*pos)[x];
    out.z_coordinate = std::move(z);
    // Relabel the Z factor by its centered coordinate.
    for (VertexId a = 0; a < ng; ++a)
      for (VertexId x = 0; x < nh; ++x) {
        std::string la = g.has_labels() ? g.label(a) : std::to_string(a);
        labels[a * nh + x] = la + "|" + std::to_string((*pos)[x]);
      }
  }
  out.graph = Graph(ng * nh, std::move(edges), std::move(labels));
  return out;
}

GeneratedGraph tree_times_segment(int branching, int depth, long half_length, std::size_t budget) {
  if (half_length < 1) throw Error(ErrorCode::InvalidArgument, "segment half length must be >= 1");
  auto tree = regular_tree(branching, depth, budget);
  auto seg = path_graph(static_cast<std::size_t>(2 * half_length + 1), budget);
  auto out = cartesian_product(tree.graph, seg.graph, budget);
  out.params = {{"b", branching}, {"depth", depth}, {"L", half_length}};
  const std::size_t nh = seg.graph.vertex_count();
  out.center = 0 * nh + static_cast<std::size_t>(half_length);
  return out;
}

VertexFunction z_shift(const GeneratedGraph& product, const VertexFunction& f) {
  if (product.family != Family::Product || !product.z_coordinate)
    throw Error(ErrorCode::NotAProduct, "z_shift needs a product whose second factor is a path");
  const auto& z = *product.z_coordinate;
  if (f.size() != z.size()) throw Error(ErrorCode::GraphMismatch, "function size does not match product");
  const std::size_t nh = product.second_factor_size;
  // Within a block of nh vertices (fixed first factor), find the vertex with
  // position z+1.
  VertexFunction out(f.size());
  for (std::size_t block = 0; block < f.size(); block += nh) {
    std::vector<VertexId> by_pos(nh);
    long zmin = z[block];
    for (std::size_t x = 0; x < nh; ++x) zmin = std::min(zmin, z[block + x]);
    for (std::size_t x = 0; x < nh; ++x) by_pos[static_cast<std::size_t>(z[block + x] - zmin)] = block + x;
    for (std::size_t i = 0; i < nh; ++i) {
      VertexId v = by_pos[i];
      out[v] = (i + 1 < nh) ? f[by_pos[i + 1]] : f[v];
    }
  }
  return out;
}

namespace {

// Incremental construction state for the {p,q} tiling.
struct TilingBuilder {
  int p, q;
  std::size_t budget;
  std::vector<Edge> edges;
  std::vector<std::size_t> degree;
  std::vector<long> ring;
  std::vector<std::vector<VertexId>> faces;

  VertexId add_vertex(long r) {
    degree.push_back(0);
    ring.push_back(r);
    check_budget(static_cast<double>(degree.size()), budget, "hyperbolic_tessellation");
    return degree.size() - 1;
  }
  void add_edge(VertexId a, VertexId b) {
    edges.push_back({std::min(a, b), std::max(a, b)});
    ++degree[a];
    ++degree[b];
  }

  struct Spoke {
    std::size_t owner_pos;  // index into the current boundary cycle
  };

  // Grows one ring outward from `boundary`. spokes_at[i] outward edges leave
  // boundary[i]; gap_edges[t] is the number of old boundary edges between
  // spoke t and spoke t+1 (cyclically). Returns the new boundary cycle.
  std::vector<VertexId> grow(const std::vector<VertexId>& boundary, const std::vector<std::size_t>& spokes_at,
                             long new_ring) {
    const std::size_t m = boundary.size();
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t s = 0; s < spokes_at[i]; ++s) owner.push_back(i);
    const std::size_t T = owner.size();
    if (T == 0) throw Error(ErrorCode::InvalidArgument, "tiling ring has no outward edges");

    std::vector<long> gap(T), outer(T);
    std::vector<std::vector<VertexId>> gap_path(T);  // old boundary vertices spanned by each gap face
    for (std::size_t t = 0; t < T; ++t) {
      std::size_t a = owner[t], b = owner[(t + 1) % T];
      std::size_t len;
      if (t + 1 < T) {
        len = b - a;
      } else {
        len = (b + m - a) % m;
        if (len == 0 && m > 1) len = m;
      }
      if (m == 1) len = 0;
      gap[t] = static_cast<long>(len);
      outer[t] = p - gap[t] - 2;
      if (outer[t] < 0) throw Error(ErrorCode::InvalidArgument, "tiling ring closes up; parameters not hyperbolic");
      for (std::size_t k = 0; k <= len; ++k) gap_path[t].push_back(boundary[(a + k) % m]);
    }
    // Start at a spoke whose preceding gap opens (outer >= 1) so its endpoint is fresh.
    std::size_t start = T;
    for (std::size_t t = 0; t < T; ++t)
      if (outer[(t + T - 1) % T] >= 1) {
        start = t;
        break;
      }
    if (start == T) throw Error(ErrorCode::InvalidArgument, "tiling ring degenerates to a point");

    std::vector<VertexId> end(T);
    std::vector<std::vector<VertexId>> intermediates(T);
    std::vector<VertexId> next_boundary;
    for (std::size_t k = 0; k < T; ++k) {
      std::size_t t = (start + k) % T;
      std::size_t prev = (t + T - 1) % T;
      if (k == 0 || outer[prev] >= 1) {
        end[t] = add_vertex(new_ring);
        next_boundary.push_back(end[t]);
      } else {
        end[t] = end[prev];
      }
      add_edge(boundary[owner[t]], end[t]);
      if (outer[t] >= 1) {
        VertexId last = end[t];
        for (long j = 0; j + 1 < outer[t]; ++j) {
          VertexId w = add_vertex(new_ring);
          intermediates[t].push_back(w);
          next_boundary.push_back(w);
          add_edge(last, w);
          last = w;
        }
        // Connect to the next spoke's endpoint: created on the next iteration,
        // or the first endpoint when wrapping around.
        if (k + 1 == T) add_edge(last, end[start]);
      }
      if (k > 0 && outer[prev] >= 1) {
        VertexId last = intermediates[prev].empty() ? end[prev] : intermediates[prev].back();
        add_edge(last, end[t]);
      }
    }
    for (std::size_t t = 0; t < T; ++t) {
      std::vector<VertexId> face = gap_path[t];
      std::reverse(face.begin(), face.end());
      if (outer[t] >= 1) face.insert(face.begin(), end[(t + 1) % T]);
      face.push_back(end[t]);
      for (VertexId w : intermediates[t]) face.push_back(w);
      faces.push_back(std::move(face));
    }
    return next_boundary;
  }
};

}  // namespace

GeneratedGraph hyperbolic_tessellation(int p, int q, int layers, std::size_t budget) {
  if (p < 3 || q < 3 || layers < 1) throw Error(ErrorCode::InvalidArgument, "tessellation needs p,q >= 3, layers >= 1");
  if ((p - 2) * (q - 2) <= 4)
    throw Error(ErrorCode::NotHyperbolic, "{" + std::to_string(p) + "," + std::to_string(q) + "} is not hyperbolic");

  TilingBuilder b{p, q, budget, {}, {}, {}, {}};
  VertexId center = b.add_vertex(0);
  std::vector<VertexId> boundary =
      b.grow({center}, {static_cast<std::size_t>(q)}, 1);
  for (int layer = 2; layer <= layers; ++layer) {
    std::vector<std::size_t> spokes(boundary.size());
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      // A boundary vertex of a disk patch with degree d lies on d - 1 faces.
      long faces_here = static_cast<long>(b.degree[boundary[i]]) - 1;
      long s = q - 1 - faces_here;
      if (s < 0) throw Error(ErrorCode::InvalidArgument, "tiling vertex exceeds degree q");
      spokes[i] = static_cast<std::size_t>(s);
    }
    boundary = b.grow(boundary, spokes, layer);
  }

  GeneratedGraph out;
  out.family = Family::Tessellation;
  out.params = {{"p", p}, {"q", q}, {"layers", layers}};
  out.center = center;
  const std::size_t n = b.degree.size();
  std::vector<std::string> labels(n);
  for (VertexId v = 0; v < n; ++v) {
    out.coords.push_back({b.ring[v]});
    labels[v] = "ring" + std::to_string(b.ring[v]) + ":" + std::to_string(v);
  }
  out.boundary = normalize_set(boundary);
  out.faces = std::move(b.faces);
  out.graph = Graph(n, std::move(b.edges), std::move(labels));
  return out;
}

GeneratedGraph triangulated_disk(int layers, std::size_t budget) {
  if (layers < 1) throw Error(ErrorCode::InvalidArgument, "triangulated_disk needs layers >= 1");
  const double count = 1.0 + 3.0 * layers * (layers + 1.0);
  check_budget(count, budget, "triangulated_disk");

  // Axial directions in counterclockwise order.
  static constexpr std::array<std::array<long, 2>, 6> dirs{
      {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
  std::vector<std::array<long, 2>> cells{{0, 0}};
  std::vector<VertexId> last_ring;
  for (long k = 1; k <= layers; ++k) {
    // Start at k * dirs[5] rotated so the walk runs counterclockwise.
    std::array<long, 2> c{k * dirs[4][0], k * dirs[4][1]};
    if (k == layers) last_ring.clear();
    for (int side = 0; side < 6; ++side) {
      for (long j = 0; j < k; ++j) {
        if (k == layers) last_ring.push_back(cells.size());
        cells.push_back(c);
        c[0] += dirs[side][0];
        c[1] += dirs[side][1];
      }
    }
  }
  std::map<std::array<long, 2>, VertexId> index;
  for (VertexId v = 0; v < cells.size(); ++v) index[cells[v]] = v;
  auto find = [&](long a, long r) -> std::optional<VertexId> {
    auto it = index.find({a, r});
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  auto pos = [&](VertexId v) {
    return std::array<double, 2>{cells[v][0] + 0.5 * cells[v][1], cells[v][1] * std::sqrt(3.0) / 2.0};
  };

  GeneratedGraph out;
  out.family = Family::Disk;
  out.params = {{"layers", layers}};
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (VertexId v = 0; v < cells.size(); ++v) {
    out.coords.push_back({cells[v][0], cells[v][1]});
    labels.push_back(std::to_string(cells[v][0]) + "," + std::to_string(cells[v][1]));
    for (int d = 0; d < 3; ++d) {
      if (auto w = find(cells[v][0] + dirs[d][0], cells[v][1] + dirs[d][1])) edges.push_back({v, *w});
    }
    const long a = cells[v][0], r = cells[v][1];
    // The two triangles based at v: {v, v+e0, v+e1} and {v, v+e1, v+e2}.
    auto v1 = find(a + 1, r), v2 = find(a, r + 1), v3 = find(a - 1, r + 1);
    std::vector<std::vector<VertexId>> tris;
    if (v1 && v2) tris.push_back({v, *v1, *v2});
    if (v2 && v3) tris.push_back({v, *v2, *v3});
    for (auto& t : tris) {
      auto p0 = pos(t[0]), p1 = pos(t[1]), p2 = pos(t[2]);
      double area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
      if (area < 0) std::swap(t[1], t[2]);
      out.faces.push_back(t);
    }
  }
  out.center = 0;
  out.boundary = last_ring;
  out.graph = Graph(cells.size(), std::move(edges), std::move(labels));
  return out;
}

FamilySpec FamilySpec::parse(const std::string& text) {
  FamilySpec spec;
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::map<std::string, int> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::Parse, "bad family parameter '" + item + "'");
      try {
        kv[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "bad family parameter '" + item + "'");
      }
    }
  }
  auto get = [&](const std::string& k, int dflt) {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  };
  if (kind == "lattice") {
    spec.family = Family::Lattice;
    spec.dimension = get("d", 2);
  } else if (kind == "tree") {
    spec.family = Family::Tree;
    spec.branching = get("b", 2);
  } else if (kind == "tree-x-z") {
    spec.family = Family::Product;
    spec.branching = get("b", 3);
  } else if (kind == "tessellation") {
    spec.family = Family::Tessellation;
    spec.p = get("p", 4);
    spec.q = get("q", 5);
  } else if (kind == "disk") {
    spec.family = Family::Disk;
  } else {
    throw Error(ErrorCode::Parse, "unknown family '" + kind + "'");
  }
  return spec;
}

std::string FamilySpec::name() const {
  switch (family) {
    case Family::Lattice: return "Z" + std::to_string(dimension);
    case Family::Tree: return "tree" + std::to_string(branching);
    case Family::Product: return "tree" + std::to_string(branching) + "xZ";
    case Family::Tessellation: return "{" + std::to_string(p) + "," + std::to_string(q) + "}";
    case Family::Disk: return "disk";
    case Family::Path: return "path";
  }
  return "unknown";
}

namespace {

// ball(R) of tree x Z around (root, 0) is {(a, z): depth(a) + |z| <= R}; built
// directly so the full product is never materialized.
Exhaustion product_exhaustion(int branching, long radius, std::size_t budget) {
  auto tree = regular_tree(branching, static_cast<int>(radius), budget);
  const std::size_t nt = tree.graph.vertex_count();
  std::vector<std::size_t> first(nt + 1, 0);
  for (VertexId a = 0; a < nt; ++a) {
    long half = radius - tree.coords[a][0];
    first[a + 1] = first[a] + static_cast<std::size_t>(2 * half + 1);
  }
  check_budget(static_cast<double>(first[nt]), budget, "tree x Z exhaustion");
  auto id = [&](VertexId a, long z) { return first[a] + static_cast<std::size_t>(z + radius - tree.coords[a][0]); };

  Exhaustion ex;
  const std::size_t n = first[nt];
  std::vector<Edge> edges;
  std::vector<std::string> labels(n);
  ex.coords.resize(n);
  ex.hop.resize(n);
  for (VertexId a = 0; a < nt; ++a) {
    const long depth = tree.coords[a][0];
    const long half = radius - depth;
    for (long z = -half; z <= half; ++z) {
      VertexId v = id(a, z);
      labels[v] = tree.graph.label(a) + "|" + std::to_string(z);
      ex.coords[v] = {static_cast<double>(z), static_cast<double>(depth)};
      ex.hop[v] = static_cast<std::size_t>(depth + std::abs(z));
      if (z < half) edges.push_back({v, v + 1});
    }
  }
  for (const auto& e : tree.graph.edges()) {
    // e.v is the child (created later in breadth-first order).
    const long half = radius - tree.coords[e.v][0];
    for (long z = -half; z <= half; ++z) edges.push_back({id(e.u, z), id(e.v, z)});
  }
  for (VertexId v = 0; v < n; ++v) {
    if (ex.hop[v] == static_cast<std::size_t>(radius)) ex.sphere.push_back(v);
    if (ex.hop[v] * 4 <= static_cast<std::size_t>(radius)) ex.inner_ball.push_back(v);
  }
  ex.root = id(0, 0);
  ex.graph = Graph(n, std::move(edges), std::move(labels));
  return ex;
}

}  // namespace

Exhaustion build_exhaustion(const FamilySpec& spec, long radius, std::size_t budget) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "exhaustion radius must be >= 1");
  if (spec.family == Family::Product) return product_exhaustion(spec.branching, radius, budget);
  GeneratedGraph gen;
  switch (spec.family) {
    case Family::Lattice: gen = lattice_box(spec.dimension, radius, budget); break;
    case Family::Tree: gen = regular_tree(spec.branching, static_cast<int>(radius), budget); break;
    case Family::Tessellation: gen = hyperbolic_tessellation(spec.p, spec.q, static_cast<int>(radius), budget); break;
    case Family::Disk: gen = triangulated_disk(static_cast<int>(radius), budget); break;
    case Family::Path:
    case Family::Product:
      gen = path_graph(static_cast<std::size_t>(2 * radius + 1), budget);
      gen.center = static_cast<VertexId>(radius);
      break;
  }
  auto hop = hop_distances(gen.graph, gen.center);
  VertexSet members;
  for (VertexId v = 0; v < hop.size(); ++v)
    if (hop[v] <= static_cast<std::size_t>(radius)) members.push_back(v);
  auto sub = induced_subgraph(gen.graph, members);

  Exhaustion ex;
  ex.root = sub.to_local[gen.center];
  ex.hop.resize(members.size());
  ex.coords.resize(members.size());
  for (VertexId i = 0; i < members.size(); ++i) {
    VertexId v = members[i];
    ex.hop[i] = hop[v];
    if (hop[v] == static_cast<std::size_t>(radius)) ex.sphere.push_back(i);
    if (hop[v] * 4 <= static_cast<std::size_t>(radius)) ex.inner_ball.push_back(i);
    const auto& c = gen.coords[v];
    std::vector<double> cd(c.begin(), c.end());
    if (spec.family == Family::Tree && c[0] > 0) {
      // Position within the layer, normalized to [0, 1].
      double layer = (c[0] == 1) ? spec.branching
                                 : spec.branching * std::pow(std::max(spec.branching - 1, 2), c[0] - 1);
      cd = {layer > 1 ? c[1] / (layer - 1.0) : 0.0, static_cast<double>(c[0])};
    } else if (spec.family == Family::Tree) {
      cd = {0.5, 0.0};
    }
    ex.coords[i] = std::move(cd);
  }
  ex.graph = std::move(sub.graph);
  return ex;
}

}  // namespace ppot
