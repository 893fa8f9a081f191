#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ppot/capacity.hpp"
#include "ppot/cli/random.hpp"
#include "ppot/error.hpp"
#include "ppot/generators.hpp"
#include "ppot/modulus.hpp"

using namespace ppot;

namespace {

ModulusConfig mod_at(double p) {
  ModulusConfig cfg;
  cfg.p = p;
  cfg.tolerance = 1e-9;
  cfg.inner_tolerance = 1e-12;
  return cfg;
}

SolverConfig solve_at(double p) {
  SolverConfig cfg;
  cfg.p = p;
  cfg.tolerance = 1e-11;
  return cfg;
}

}  // namespace

TEST(Modulus, SinglePath) {
  for (std::size_t n : {1u, 4u, 9u})
    for (double p : {1.5, 2.0, 3.0}) {
      auto g = path_graph(n + 1).graph;
      Path path;
      for (VertexId v = 0; v <= n; ++v) path.vertices.push_back(v);
      auto fam = PathFamily::explicit_paths({path});
      auto res = p_modulus(g, fam, mod_at(p));
      EXPECT_NEAR(res.value, std::pow(double(n), 1.0 - p), 1e-8);
      for (double m : res.density) EXPECT_NEAR(m, 1.0 / n, 1e-8);
      EXPECT_NEAR(extremal_length(g, fam, mod_at(p)), std::pow(double(n), p - 1.0), 1e-6);
    }
}

TEST(Modulus, EmptyFamily) {
  auto g = path_graph(3).graph;
  auto fam = PathFamily::explicit_paths({});
  EXPECT_EQ(p_modulus(g, fam, mod_at(2.0)).value, 0.0);
  EXPECT_EQ(extremal_length(g, fam, mod_at(2.0)), std::numeric_limits<double>::infinity());
}

TEST(Modulus, ConnectorEqualsCapacity) {
  cli::Rng rng(17);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto g = cli::random_connected_graph(rng, 30 + 10 * trial, 0.8);
      VertexSet a{0}, b{g.vertex_count() - 1, g.vertex_count() - 2};
      auto mod = p_modulus(g, PathFamily::connector(a, b), mod_at(p));
      auto cap = p_capacity(g, a, b, solve_at(p));
      EXPECT_NEAR(mod.value, cap.value, 1e-4 * cap.value) << "p=" << p;
      EXPECT_LE(mod.lower_bound, mod.value + 1e-12);
    }
  }
}

TEST(Modulus, DensityIsFeasible) {
  cli::Rng rng(2);
  auto g = cli::random_connected_graph(rng, 40);
  auto res = p_modulus(g, PathFamily::connector({0}, {39}), mod_at(2.0));
  auto sp = shortest_paths(g, res.density, VertexSet{0});
  EXPECT_GE(sp.distance[39], 1.0 - 1e-9);
  for (double m : res.density) EXPECT_GE(m, 0.0);
}

TEST(Modulus, ConnectorErrors) {
  EXPECT_THROW(PathFamily::connector({}, {1}), Error);
  try {
    PathFamily::connector({1}, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overlap);
  }
}

TEST(Modulus, NullFamilyTrend) {
  auto z2 = null_family_trend(FamilySpec::parse("lattice:d=2"), {4, 8, 16}, mod_at(2.0));
  EXPECT_TRUE(z2.null_trend);
  auto tree = null_family_trend(FamilySpec::parse("tree:b=2"), {4, 6, 8, 10}, mod_at(2.0));
  EXPECT_FALSE(tree.null_trend);
  auto z3 = null_family_trend(FamilySpec::parse("lattice:d=3"), {4, 6, 8}, mod_at(2.0));
  EXPECT_FALSE(z3.null_trend);
}

TEST(Modulus, BoundaryDistanceFunction) {
  auto g = path_graph(6).graph;
  auto f = boundary_distance_function(g, natural_metric(g), {0});
  for (VertexId v = 0; v < 6; ++v) EXPECT_EQ(f[v], double(v));
  cli::Rng rng(8);
  auto h = cli::random_connected_graph(rng, 50);
  std::vector<double> w(h.edge_count());
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (auto& x : w) x = u(rng);
  EdgeMetric m(w);
  auto d = boundary_distance_function(h, m, {3, 7});
  auto grad = gradient_abs(h, d, EdgeMetric(std::vector<double>(h.edge_count(), 1.0)));
  for (EdgeId e = 0; e < h.edge_count(); ++e) EXPECT_LE(grad[e], m[e] + 1e-12);
}

TEST(Resolving, Z3NaturalMetricIsNotResolving) {
  auto box = lattice_box(3, 4);
  const std::size_t n = box.graph.vertex_count();
  // Anchor: one corner of the box; far set: the opposite corner region.
  VertexSet anchor{n - 1};
  VertexSet far;
  for (VertexId v = 0; v < n; ++v) {
    const auto& c = box.coords[v];
    if (c[0] + c[1] + c[2] <= -10) far.push_back(v);
  }
  BoundaryProxy proxy{VertexAnchor{anchor}, {3.0, 2.0, 1.0, 0.5}, far};
  auto res = resolving_check(box.graph, natural_metric(box.graph), proxy, ModulusConfig{});
  EXPECT_FALSE(res.resolving_trend);
  EXPECT_GT(res.modulus.back(), 0.1 * res.modulus.front());
}

TEST(Resolving, LargerMetricStaysResolving) {
  // Anchor at the root, far set at the leaves: the modulus to B(s) grows
  // like 2^s.
  auto t = regular_tree(2, 9);
  const auto& g = t.graph;
  BoundaryProxy proxy{VertexAnchor{{t.center}}, {8.0, 5.0, 2.0, 0.5}, t.boundary};
  auto base = resolving_check(g, natural_metric(g), proxy, ModulusConfig{});
  ASSERT_TRUE(base.resolving_trend);
  std::vector<double> bigger(g.edge_count());
  for (EdgeId e = 0; e < bigger.size(); ++e) bigger[e] = 1.5 + 0.1 * double(e % 2);
  auto big = resolving_check(g, EdgeMetric(bigger), proxy, ModulusConfig{});
  EXPECT_TRUE(big.resolving_trend);
  for (std::size_t i = 0; i < base.modulus.size(); ++i) EXPECT_LE(big.modulus[i], base.modulus[i] * (1 + 1e-5));
}

TEST(Resolving, EmptyTargetAndOverlap) {
  auto g = path_graph(5).graph;
  BoundaryProxy tiny{VertexAnchor{{4}}, {-1.0}, {0}};
  EXPECT_THROW(resolving_check(g, natural_metric(g), tiny, mod_at(2.0)), Error);
  BoundaryProxy overlap{VertexAnchor{{4}}, {10.0}, {0}};
  try {
    resolving_check(g, natural_metric(g), overlap, mod_at(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overlap);
  }
}
