#include <gtest/gtest.h>

#include <random>

#include "ppot/cli/random.hpp"
#include "ppot/error.hpp"
#include "ppot/generators.hpp"
#include "ppot/graph.hpp"

using namespace ppot;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId v = 0; v < n; ++v) e.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
  return Graph(n, e);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NoConvergence;  // sentinel: nothing thrown
}

}  // namespace

TEST(Graph, BuildSmallestAndTriangle) {
  std::vector<std::pair<VertexId, VertexId>> one{{0, 1}};
  auto g = build_graph(one);
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);

  std::vector<std::pair<VertexId, VertexId>> tri{{0, 1}, {1, 2}, {2, 0}};
  auto t = build_graph(tri);
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(t.degree(v), 2u);
}

TEST(Graph, RejectsLoopsDuplicatesAndDisconnection) {
  std::vector<std::pair<VertexId, VertexId>> loop{{0, 0}};
  EXPECT_EQ(code_of([&] { build_graph(loop); }), ErrorCode::LoopEdge);
  EXPECT_EQ(code_of([] { Graph(2, {{0, 1}, {0, 1}}); }), ErrorCode::DuplicateEdge);
  EXPECT_EQ(code_of([] { Graph(4, {{0, 1}, {2, 3}}); }), ErrorCode::Disconnected);
  EXPECT_EQ(code_of([] { Graph(2, {{0, 5}}); }), ErrorCode::InvalidIndex);
}

TEST(Graph, NaturalMetricIsOne) {
  std::vector<std::pair<VertexId, VertexId>> tri{{0, 1}, {1, 2}, {2, 0}};
  auto m = natural_metric(build_graph(tri));
  ASSERT_EQ(m.size(), 3u);
  for (double x : m.values()) EXPECT_EQ(x, 1.0);
}

TEST(Graph, PathLength) {
  Graph g(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(path_length(g, natural_metric(g), Path{{0, 1, 2}}), 2.0);
  EXPECT_EQ(path_length(g, natural_metric(g), Path{{1}}), 0.0);
  Graph e(2, {{0, 1}});
  EXPECT_EQ(path_length(e, EdgeMetric({0.25}), Path{{0, 1}}), 0.25);
  EXPECT_EQ(code_of([&] { path_edges(g, Path{{0, 2}}); }), ErrorCode::InvalidPath);
  EXPECT_EQ(code_of([&] { path_edges(g, Path{{0, 1, 0}}); }), ErrorCode::InvalidPath);
}

TEST(Graph, MetricDistanceExamples) {
  Graph path(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(metric_distance(path, natural_metric(path), 1, 1), 0.0);
  EXPECT_EQ(metric_distance(path, natural_metric(path), 0, 2), 2.0);
  auto c4 = cycle(4);
  std::vector<double> w(c4.edge_count(), 1.0);
  w[*c4.find_edge(0, 1)] = 10.0;
  EXPECT_EQ(metric_distance(c4, EdgeMetric(w), 0, 2), 2.0);
  EXPECT_EQ(metric_distance(c4, EdgeMetric(w), 0, 1), 3.0);
}

TEST(Graph, MetricDistanceIsAMetricOnRandomGraphs) {
  cli::Rng rng(11);
  std::uniform_real_distribution<double> weight(0.1, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = cli::random_connected_graph(rng, 25, 1.0);
    std::vector<double> w(g.edge_count());
    for (auto& x : w) x = weight(rng);
    EdgeMetric m(w);
    std::vector<std::vector<double>> d(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u) d[u] = shortest_paths(g, w, VertexSet{u}).distance;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      EXPECT_EQ(d[u][u], 0.0);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        EXPECT_NEAR(d[u][v], d[v][u], 1e-12);
        for (VertexId x = 0; x < g.vertex_count(); ++x) EXPECT_LE(d[u][v], d[u][x] + d[x][v] + 1e-12);
      }
    }
    EXPECT_DOUBLE_EQ(metric_distance(g, m, 0, 7), d[0][7]);
  }
}

TEST(Graph, ShortestPathTiesResolveByIndex) {
  auto c4 = cycle(4);
  auto sp = shortest_paths(c4, natural_metric(c4).values(), VertexSet{0});
  EXPECT_EQ(sp.path_to(2).vertices, (std::vector<VertexId>{0, 1, 2}));
}

TEST(Graph, BallAndSphereOnZ2) {
  auto box = lattice_box(2, 3);
  EXPECT_EQ(ball(box.graph, box.center, 0), VertexSet{box.center});
  EXPECT_EQ(ball(box.graph, box.center, 1).size(), 5u);
  EXPECT_EQ(sphere(box.graph, box.center, 1).size(), 4u);
  EXPECT_EQ(ball(box.graph, box.center, 100).size(), box.graph.vertex_count());
  EXPECT_TRUE(sphere(box.graph, box.center, 100).empty());
  auto s2 = sphere(box.graph, box.center, 2);
  auto b1 = ball(box.graph, box.center, 1);
  for (VertexId v : s2) EXPECT_EQ(std::count(b1.begin(), b1.end(), v), 0);
}

TEST(Graph, GradientAbs) {
  Graph e(2, {{0, 1}});
  VertexFunction c(std::vector<double>{3.0, 3.0});
  EXPECT_EQ(gradient_abs(e, c, natural_metric(e))[0], 0.0);
  VertexFunction f(std::vector<double>{0.0, 1.0});
  EXPECT_EQ(gradient_abs(e, f, natural_metric(e))[0], 1.0);
  EXPECT_EQ(gradient_abs(e, f, EdgeMetric({0.5}))[0], 2.0);
}

TEST(Graph, InducedSubgraphMapsBothWays) {
  auto box = lattice_box(2, 2);
  auto keep = ball(box.graph, box.center, 1);
  auto sub = induced_subgraph(box.graph, keep);
  EXPECT_EQ(sub.graph.vertex_count(), 5u);
  EXPECT_EQ(sub.graph.edge_count(), 4u);
  for (VertexId i = 0; i < sub.to_parent.size(); ++i) EXPECT_EQ(sub.to_local[sub.to_parent[i]], i);
}
