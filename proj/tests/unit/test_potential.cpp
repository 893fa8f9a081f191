#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ppot/cli/random.hpp"
#include "ppot/error.hpp"
#include "ppot/generators.hpp"
#include "ppot/potential.hpp"

using namespace ppot;

namespace {

// Dense p = 2 oracle: the harmonic extension solves L_II f_I = -L_IB f_B.
VertexFunction harmonic_oracle(const Graph& g, const VertexSet& boundary, const std::vector<double>& values) {
  const std::size_t n = g.vertex_count();
  std::vector<long> slot(n, -1);
  VertexFunction f(n);
  std::vector<char> fixed(n, 0);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    fixed[boundary[i]] = 1;
    f[boundary[i]] = values[i];
  }
  long k = 0;
  for (VertexId v = 0; v < n; ++v)
    if (!fixed[v]) slot[v] = k++;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  for (VertexId v = 0; v < n; ++v) {
    if (fixed[v]) continue;
    for (const auto& nb : g.neighbors(v)) {
      L(slot[v], slot[v]) += 1.0;
      if (fixed[nb.vertex]) {
        rhs(slot[v]) += f[nb.vertex];
      } else {
        L(slot[v], slot[nb.vertex]) -= 1.0;
      }
    }
  }
  Eigen::VectorXd x = L.ldlt().solve(rhs);
  for (VertexId v = 0; v < n; ++v)
    if (!fixed[v]) f[v] = x(slot[v]);
  return f;
}

Graph edge_graph() { return Graph(2, {{0, 1}}); }

}  // namespace

TEST(Potential, EnergyExamples) {
  Graph e = edge_graph();
  EXPECT_EQ(dirichlet_energy(e, VertexFunction(std::vector<double>{0, 1}), 2.0), 1.0);
  EXPECT_EQ(dirichlet_energy(e, VertexFunction(std::vector<double>{0, 2}), 3.0), 8.0);
  Graph path(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(dirichlet_energy(path, VertexFunction(std::vector<double>{0, 1, 2}), 2.0), 2.0);
  EXPECT_EQ(dirichlet_energy(path, VertexFunction(3, 4.0), 1.5), 0.0);
}

TEST(Potential, LaplacianExamples) {
  Graph e = edge_graph();
  auto l = p_laplacian(e, VertexFunction(std::vector<double>{0, 1}), 2.0);
  EXPECT_EQ(l[0], 1.0);
  EXPECT_EQ(l[1], -1.0);
  auto l3 = p_laplacian(e, VertexFunction(std::vector<double>{0, 2}), 3.0);
  EXPECT_EQ(l3[0], 4.0);
  EXPECT_EQ(l3[1], -4.0);
  auto lz = p_laplacian(e, VertexFunction(2, 1.0), 1.5);
  EXPECT_EQ(lz[0], 0.0);
  EXPECT_FALSE(std::isnan(lz[1]));
}

TEST(Potential, PairingHomogeneityAndSumZero) {
  cli::Rng rng(3);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    auto g = cli::random_connected_graph(rng, 40);
    auto f = cli::random_function(rng, 40);
    auto l = p_laplacian(g, f, p);
    double sum = 0;
    for (double x : l.values()) sum += x;
    EXPECT_NEAR(sum, 0.0, 1e-10);
    VertexFunction f2(f.size());
    for (VertexId v = 0; v < f.size(); ++v) f2[v] = 2.0 * f[v];
    EXPECT_NEAR(dirichlet_energy(g, f2, p), std::pow(2.0, p) * dirichlet_energy(g, f, p),
                1e-12 * (1 + dirichlet_energy(g, f2, p)));
  }
}

TEST(Potential, EnergyLaplacianIdentity) {
  Graph e = edge_graph();
  VertexFunction f(std::vector<double>{0, 1});
  EXPECT_EQ(pairing(f, p_laplacian(e, f, 2.0)), -1.0);
  EXPECT_EQ(energy_laplacian_identity_residual(e, f, 2.0), 0.0);
  cli::Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    double p = 1.5 + 0.5 * (i % 6);
    auto g = cli::random_connected_graph(rng, 2 + i * 2);
    auto h = cli::random_function(rng, g.vertex_count());
    EXPECT_LE(energy_laplacian_identity_residual(g, h, p), 1e-10);
  }
}

TEST(Potential, DirectionalDerivativeMatchesFiniteDifference) {
  cli::Rng rng(9);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    auto g = cli::random_connected_graph(rng, 30);
    auto f = cli::random_function(rng, 30);
    auto d = cli::random_function(rng, 30);
    const double t = 1e-6;
    VertexFunction fp(30), fm(30);
    for (VertexId v = 0; v < 30; ++v) {
      fp[v] = f[v] + t * d[v];
      fm[v] = f[v] - t * d[v];
    }
    const double fd = (dirichlet_energy(g, fp, p) - dirichlet_energy(g, fm, p)) / (2 * t);
    const double an = energy_directional_derivative(g, f, d, p);
    EXPECT_NEAR(an, fd, 1e-5 * (1 + std::abs(an))) << "p=" << p;
  }
}

TEST(Potential, SolverMatchesDenseOracleAtP2) {
  cli::Rng rng(21);
  SolverConfig cfg;
  cfg.p = 2.0;
  cfg.tolerance = 1e-11;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20 + 30 * trial;
    auto g = cli::random_connected_graph(rng, n, 0.5);
    VertexSet boundary{0, n / 3, n - 1};
    std::vector<double> values{0.0, 0.3, 1.0};
    auto sol = solve_dirichlet({&g, boundary, values}, cfg);
    ASSERT_EQ(sol.status, SolveStatus::Converged);
    auto ref = harmonic_oracle(g, boundary, values);
    for (VertexId v = 0; v < n; ++v) EXPECT_NEAR(sol.f[v], ref[v], 1e-8) << "trial " << trial;
  }
}

TEST(Potential, PathRampIsHarmonicForEveryP) {
  const std::size_t n = 11;
  auto g = path_graph(n).graph;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (auto method : {SolverMethod::Auto, SolverMethod::CoordinateDescent, SolverMethod::Newton}) {
      SolverConfig cfg;
      cfg.p = p;
      cfg.tolerance = 1e-12;
      cfg.method = method;
      auto sol = solve_dirichlet({&g, {0, n - 1}, {0.0, 1.0}}, cfg);
      for (VertexId v = 0; v < n; ++v) EXPECT_NEAR(sol.f[v], double(v) / (n - 1), 1e-7) << p;
    }
  }
}

TEST(Potential, FourCycleSymmetricSolution) {
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  for (double p : {1.5, 3.0}) {
    SolverConfig cfg;
    cfg.p = p;
    auto sol = solve_dirichlet({&c4, {0, 2}, {0.0, 1.0}}, cfg);
    EXPECT_NEAR(sol.f[1], 0.5, 1e-7);
    EXPECT_NEAR(sol.f[3], 0.5, 1e-7);
  }
}

TEST(Potential, NoInteriorReturnsBoundary) {
  Graph e = edge_graph();
  auto sol = solve_dirichlet({&e, {0, 1}, {2.0, 5.0}}, SolverConfig{});
  EXPECT_EQ(sol.status, SolveStatus::NoInterior);
  EXPECT_EQ(sol.f[0], 2.0);
  EXPECT_EQ(sol.f[1], 5.0);
}

TEST(Potential, MaximumPrincipleAndMinimality) {
  cli::Rng rng(33);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (double p : {1.5, 2.0, 3.0}) {
    auto g = cli::random_connected_graph(rng, 60);
    VertexSet boundary{0, 5, 17, 42, 59};
    std::vector<double> vals;
    for (std::size_t i = 0; i < boundary.size(); ++i) vals.push_back(u(rng));
    SolverConfig cfg;
    cfg.p = p;
    cfg.tolerance = p < 2.0 ? 1e-7 : 1e-10;
    auto sol = solve_dirichlet({&g, boundary, vals}, cfg);
    const double lo = *std::min_element(vals.begin(), vals.end());
    const double hi = *std::max_element(vals.begin(), vals.end());
    for (double x : sol.f.values()) {
      EXPECT_GE(x, lo - 1e-9);
      EXPECT_LE(x, hi + 1e-9);
    }
    const double e0 = dirichlet_energy(g, sol.f, p);
    for (int k = 0; k < 20; ++k) {
      auto d = cli::random_function(rng, g.vertex_count(), -1e-3, 1e-3);
      for (VertexId b : boundary) d[b] = 0.0;
      VertexFunction h(g.vertex_count());
      for (VertexId v = 0; v < g.vertex_count(); ++v) h[v] = sol.f[v] + d[v];
      EXPECT_GE(dirichlet_energy(g, h, p), e0 - 1e-12 * (1 + e0));
    }
  }
}

TEST(Potential, ConfigValidation) {
  SolverConfig cfg;
  cfg.p = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.p = 2.0;
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Potential, LiouvilleProbe) {
  SolverConfig cfg;
  cfg.p = 2.0;
  auto flat = liouville_probe(FamilySpec::parse("lattice:d=2"), cfg, {4, 8}, BoundaryScheme::Constant);
  for (const auto& pt : flat) EXPECT_NEAR(pt.oscillation, 0.0, 1e-9);
  auto ramp = liouville_probe(FamilySpec::parse("lattice:d=2"), cfg, {8, 16}, BoundaryScheme::CoordinateRamp);
  for (const auto& pt : ramp) {
    EXPECT_GT(pt.oscillation, 0.1);
    EXPECT_LT(pt.oscillation, 1.0);
  }
}
