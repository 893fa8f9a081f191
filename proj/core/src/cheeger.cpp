#include "ppot/cheeger.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "ppot/error.hpp"

namespace ppot {

double cheeger_constant_exact(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kCheegerEnumerationLimit)
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " vertices exceed the enumeration limit");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Cheeger constant needs at least two vertices");

  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  // Gray-code walk: each step toggles one vertex, so the cut changes by
  // deg(v) - 2 |N(v) & S| on insertion and the negative on removal.
  const std::uint32_t total = 1u << n;
  std::uint32_t set = 0;
  long cut = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const std::uint32_t bit = 1u << v;
    const long inside = std::popcount(adj[v] & set);
    const long deg = std::popcount(adj[v]);
    if (set & bit) {
      set &= ~bit;
      cut -= deg - 2 * inside;
    } else {
      cut += deg - 2 * inside;
      set |= bit;
    }
    const std::size_t size = static_cast<std::size_t>(std::popcount(set));
    if (2 * size <= n) best = std::min(best, static_cast<double>(cut) / static_cast<double>(size));
  }
  return best;
}

CheegerCheck cheeger_functional_check(const Graph& g, const VertexFunction& f, const VertexSet& support,
                                      double h, double p) {
  const std::size_t n = g.vertex_count();
  if (f.size() != n) throw Error(ErrorCode::GraphMismatch, "function size differs from vertex count");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "Cheeger value must be positive");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "exponent must be >= 1");
  std::vector<char> inside(n, 0);
  for (VertexId v : support) {
    if (v >= n) throw Error(ErrorCode::InvalidIndex, "support vertex out of range");
    inside[v] = 1;
  }
  double mass = 0.0, mass_p = 0.0;
  for (VertexId v = 0; v < n; ++v) {
    if (!inside[v] && f[v] != 0.0)
      throw Error(ErrorCode::InvalidArgument, "function is nonzero outside its support at vertex " + std::to_string(v));
    mass += std::abs(f[v]);
    mass_p += std::pow(std::abs(f[v]), p);
  }
  double grad = 0.0, grad_p = 0.0;
  for (const auto& e : g.edges()) {
    double d = std::abs(f[e.u] - f[e.v]);
    grad += d;
    grad_p += std::pow(d, p);
  }
  CheegerCheck out;
  if (mass == 0.0) {
    out.within_bound = true;
    return out;
  }
  if (grad == 0.0) throw Error(ErrorCode::ZeroGradient, "nonzero function with zero gradient");
  out.c1 = mass / grad;
  out.cp = mass_p / grad_p;
  out.within_bound = out.c1 <= (1.0 / h) * (1.0 + 1e-12);
  return out;
}

}  // namespace ppot
