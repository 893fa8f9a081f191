#include <gtest/gtest.h>

#include <cmath>

#include "ppot/capacity.hpp"
#include "ppot/cli/random.hpp"
#include "ppot/error.hpp"
#include "ppot/generators.hpp"

using namespace ppot;

namespace {

SolverConfig at(double p) {
  SolverConfig cfg;
  cfg.p = p;
  cfg.tolerance = 1e-11;
  return cfg;
}

// k internally disjoint paths of n edges between vertex 0 and vertex 1.
Graph parallel_paths(std::size_t k, std::size_t n) {
  std::vector<Edge> edges;
  VertexId next = 2;
  for (std::size_t j = 0; j < k; ++j) {
    VertexId prev = 0;
    for (std::size_t i = 1; i < n; ++i) {
      edges.push_back({std::min(prev, next), std::max(prev, next)});
      prev = next++;
    }
    edges.push_back({std::min(prev, VertexId{1}), std::max(prev, VertexId{1})});
  }
  return Graph(next, edges);
}

}  // namespace

TEST(Capacity, SingleEdge) {
  Graph e(2, {{0, 1}});
  for (double p : {1.5, 2.0, 3.0}) EXPECT_NEAR(p_capacity(e, {0}, {1}, at(p)).value, 1.0, 1e-12);
}

TEST(Capacity, PathIsNToOneMinusP) {
  for (std::size_t n : {2u, 5u, 10u})
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      auto g = path_graph(n + 1).graph;
      auto c = p_capacity(g, {0}, {n}, at(p));
      EXPECT_NEAR(c.value, std::pow(double(n), 1.0 - p), 1e-8) << n << " " << p;
    }
}

TEST(Capacity, ParallelPathsAdd) {
  for (double p : {1.5, 2.0, 3.0}) {
    auto g = parallel_paths(3, 4);
    EXPECT_NEAR(p_capacity(g, {0}, {1}, at(p)).value, 3.0 * std::pow(4.0, 1.0 - p), 1e-8);
  }
}

TEST(Capacity, BinaryTreeRootToLeaves) {
  for (int depth : {1, 3, 6, 10}) {
    auto t = regular_tree(2, depth);
    for (double p : {1.5, 2.0, 3.0}) {
      // Layer k has 2^k edges carrying equal flux.
      double s = 0;
      for (int k = 1; k <= depth; ++k) s += std::pow(2.0, -double(k) / (p - 1.0));
      const double expect = std::pow(s, -(p - 1.0));
      EXPECT_NEAR(p_capacity(t.graph, {t.center}, t.boundary, at(p)).value, expect, 1e-7 * expect);
    }
    EXPECT_NEAR(p_capacity(t.graph, {t.center}, t.boundary, at(2.0)).value, 1.0 / (1.0 - std::pow(2.0, -depth)),
                1e-8);
  }
}

TEST(Capacity, PotentialAndSymmetry) {
  cli::Rng rng(4);
  auto g = cli::random_connected_graph(rng, 50);
  VertexSet a{0, 1}, b{30, 40, 49};
  auto ab = p_capacity(g, a, b, at(2.5));
  auto ba = p_capacity(g, b, a, at(2.5));
  EXPECT_NEAR(ab.value, ba.value, 1e-8 * ab.value);
  for (VertexId v : a) EXPECT_EQ(ab.potential[v], 1.0);
  for (VertexId v : b) EXPECT_EQ(ab.potential[v], 0.0);
  EXPECT_NEAR(dirichlet_energy(g, ab.potential, 2.5), ab.value, 1e-12);
}

TEST(Capacity, MonotoneInTheTarget) {
  cli::Rng rng(6);
  auto g = cli::random_connected_graph(rng, 40);
  double small = p_capacity(g, {0}, {39}, at(2.0)).value;
  double large = p_capacity(g, {0}, {38, 39}, at(2.0)).value;
  EXPECT_LE(small, large + 1e-10);
}

TEST(Capacity, Errors) {
  Graph e(2, {{0, 1}});
  try {
    p_capacity(e, {0}, {0}, at(2.0));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Overlap);
  }
  EXPECT_THROW(p_capacity(e, {}, {1}, at(2.0)), Error);
  EXPECT_THROW(capacity_curve(FamilySpec::parse("lattice:d=2"), {4, 4}, at(2.0)), Error);
}

TEST(Capacity, CurveIsNonincreasingOnZ2) {
  auto curve = capacity_curve(FamilySpec::parse("lattice:d=2"), {2, 4, 8, 16}, at(2.0));
  ASSERT_EQ(curve.capacity.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_LE(curve.capacity[i], curve.capacity[i - 1] + 1e-10);
  EXPECT_EQ(curve.vertex_count[0], 13u);  // hop ball of radius 2
}

TEST(Trend, ClassifierOnSyntheticSequences) {
  std::vector<long> r{8, 16, 32, 64, 128};
  std::vector<double> flat{1.0, 0.9, 0.87, 0.865, 0.864};
  EXPECT_EQ(classify_trend(r, flat).verdict, Trend::Nonparabolic);
  std::vector<double> power;
  for (long x : r) power.push_back(1.0 / double(x));
  EXPECT_EQ(classify_trend(r, power).verdict, Trend::Parabolic);
  std::vector<double> log;
  for (long x : r) log.push_back(1.0 / std::log(double(x)));
  auto fit = classify_trend(r, log);
  EXPECT_EQ(fit.verdict, Trend::Parabolic);
  EXPECT_NEAR(fit.loglog_exponent, 1.0, 1e-9);
  std::vector<double> slow{1.0, 0.8, 0.7, 0.62, 0.6};
  EXPECT_EQ(classify_trend(r, slow).verdict, Trend::Inconclusive);
  EXPECT_THROW(classify_trend({8}, {1.0}), Error);
}

TEST(Trend, TreeIsNonparabolicAtP2) {
  auto v = parabolic_index_estimate(FamilySpec::parse("tree:b=2"), {2.0}, {4, 6, 8, 10}, at(2.0));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].fit.verdict, Trend::Nonparabolic);
}
