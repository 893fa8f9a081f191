#include "ppot/cli/random.hpp"

#include <set>
#include <utility>

#include "ppot/error.hpp"

namespace ppot::cli {

Graph random_connected_graph(Rng& rng, std::size_t n, double extra_fraction) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "random graph needs at least 2 vertices");
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) {
    std::uniform_int_distribution<VertexId> pick(0, v - 1);
    const VertexId u = pick(rng);
    seen.emplace(u, v);
    edges.push_back({u, v});
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  std::size_t extra = static_cast<std::size_t>(extra_fraction * static_cast<double>(n));
  extra = std::min(extra, max_edges - edges.size());
  std::uniform_int_distribution<VertexId> any(0, n - 1);
  while (extra > 0) {
    VertexId a = any(rng), b = any(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.emplace(a, b).second) continue;
    edges.push_back({a, b});
    --extra;
  }
  return Graph(n, std::move(edges));
}

VertexFunction random_function(Rng& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  VertexFunction f(n);
  for (std::size_t v = 0; v < n; ++v) f[v] = u(rng);
  return f;
}

}  // namespace ppot::cli
