#include "ppot/cli/identity.hpp"

#include <array>
#include <cmath>

#include "ppot/cli/random.hpp"
#include "ppot/potential.hpp"

namespace ppot::cli {

std::vector<IdentityCase> run_identity_suite(std::size_t count, std::uint64_t seed, std::size_t max_vertices,
                                             const IdentityTolerances& tol) {
  constexpr std::array<double, 4> exponents{1.5, 2.0, 3.0, 4.0};
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, std::max<std::size_t>(2, max_vertices));
  std::uniform_real_distribution<double> density(0.0, 2.0), scale(0.25, 3.0), sign(0.0, 1.0);
  std::vector<IdentityCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double p = exponents[i % exponents.size()];
    const std::size_t n = size(rng);
    const Graph g = random_connected_graph(rng, n, density(rng));
    const VertexFunction f = random_function(rng, n);
    const VertexFunction dir = random_function(rng, n);

    IdentityCase c;
    c.vertices = n;
    c.edges = g.edge_count();
    c.p = p;
    c.identity_residual = energy_laplacian_identity_residual(g, f, p);

    const double analytic = energy_directional_derivative(g, f, dir, p);
    VertexFunction plus(n), minus(n);
    for (std::size_t v = 0; v < n; ++v) {
      plus[v] = f[v] + tol.step * dir[v];
      minus[v] = f[v] - tol.step * dir[v];
    }
    const double fd = (dirichlet_energy(g, plus, p) - dirichlet_energy(g, minus, p)) / (2.0 * tol.step);
    c.derivative_error = std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-12);

    const double k = (sign(rng) < 0.5 ? -1.0 : 1.0) * scale(rng);
    VertexFunction scaled(n);
    for (std::size_t v = 0; v < n; ++v) scaled[v] = k * f[v];
    const double base = dirichlet_energy(g, f, p);
    const double expect = std::pow(std::abs(k), p) * base;
    c.homogeneity_error = expect > 0.0 ? std::abs(dirichlet_energy(g, scaled, p) - expect) / expect : 0.0;

    c.pass = c.identity_residual <= tol.identity && c.derivative_error <= tol.derivative &&
             c.homogeneity_error <= tol.homogeneity;
    out.push_back(c);
  }
  return out;
}

}  // namespace ppot::cli
