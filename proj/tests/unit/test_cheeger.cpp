#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "ppot/cheeger.hpp"
#include "ppot/cli/random.hpp"
#include "ppot/error.hpp"
#include "ppot/generators.hpp"

using namespace ppot;

namespace {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph(n, e);
}

// Brute force over subsets (independent of the library's enumeration).
double cheeger_oracle(const Graph& g) {
  const std::size_t n = g.vertex_count();
  double best = 1e300;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const std::size_t size = std::popcount(mask);
    if (2 * size > n) continue;
    std::size_t cut = 0;
    for (const auto& e : g.edges()) cut += ((mask >> e.u) & 1u) != ((mask >> e.v) & 1u);
    best = std::min(best, double(cut) / double(size));
  }
  return best;
}

}  // namespace

TEST(Cheeger, Examples) {
  EXPECT_EQ(cheeger_constant_exact(complete(2)), 1.0);
  EXPECT_EQ(cheeger_constant_exact(complete(4)), 2.0);
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(cheeger_constant_exact(c4), 1.0);
  EXPECT_EQ(cheeger_constant_exact(path_graph(4).graph), 0.5);
}

TEST(Cheeger, MatchesOracleOnRandomGraphs) {
  cli::Rng rng(12);
  for (int i = 0; i < 8; ++i) {
    auto g = cli::random_connected_graph(rng, 6 + i, 0.7);
    EXPECT_DOUBLE_EQ(cheeger_constant_exact(g), cheeger_oracle(g));
  }
}

TEST(Cheeger, Limits) {
  EXPECT_THROW(cheeger_constant_exact(path_graph(kCheegerEnumerationLimit + 1).graph), Error);
  EXPECT_THROW(cheeger_constant_exact(Graph(1, {})), Error);
}

TEST(Cheeger, IndicatorOfOneVertex) {
  auto t = regular_tree(3, 2);
  VertexFunction f(t.graph.vertex_count());
  f[t.center] = 1.0;
  const double h = cheeger_constant_exact(t.graph);
  auto c = cheeger_functional_check(t.graph, f, {t.center}, h, 2.0);
  EXPECT_DOUBLE_EQ(c.c1, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.cp, 1.0 / 3.0);
}

TEST(Cheeger, CoareaBoundOnRandomFunctions) {
  auto t = regular_tree(2, 3);
  const double h = cheeger_constant_exact(t.graph);
  cli::Rng rng(19);
  const std::size_t n = t.graph.vertex_count();
  for (int i = 0; i < 30; ++i) {
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    std::shuffle(order.begin(), order.end(), rng);
    VertexSet support(order.begin(), order.begin() + 1 + i % (n / 2));
    support = normalize_set(support);
    auto vals = cli::random_function(rng, n, -1.0, 1.0);
    VertexFunction f(n);
    for (VertexId v : support) f[v] = vals[v];
    auto c = cheeger_functional_check(t.graph, f, support, h, 2.0);
    EXPECT_TRUE(c.within_bound) << c.c1 << " vs " << 1.0 / h;
  }
}

TEST(Cheeger, RejectsFunctionsOutsideSupport) {
  auto g = path_graph(3).graph;
  VertexFunction f(std::vector<double>{1.0, 1.0, 0.0});
  EXPECT_THROW(cheeger_functional_check(g, f, {0}, 0.5, 2.0), Error);
}
