#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ppot/circlepack.hpp"
#include "ppot/error.hpp"
#include "ppot/generators.hpp"
#include "ppot/io.hpp"
#include "ppot/packing.hpp"

using namespace ppot;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::set<std::pair<VertexId, VertexId>> edge_set(std::span<const Edge> edges) {
  std::set<std::pair<VertexId, VertexId>> s;
  for (const auto& e : edges) s.insert({e.u, e.v});
  return s;
}

Triangulation tetra() {
  // Center 0 inside triangle 1-2-3.
  Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {1, 3}});
  return make_triangulation(g, {1, 2, 3});
}

}  // namespace

TEST(AngleSum, Examples) {
  std::vector<double> six(6, 1.0), five(5, 1.0);
  EXPECT_NEAR(angle_sum(1.0, six), kTwoPi, 1e-14);
  EXPECT_NEAR(angle_sum(1.0, five), 5.0 * std::numbers::pi / 3.0, 1e-14);
  EXPECT_LT(angle_sum(1e8, six), 1e-3);
  EXPECT_NEAR(tangency_angle(1.0, 1.0, 1.0), std::numbers::pi / 3.0, 1e-15);
}

TEST(AngleSum, StrictlyDecreasing) {
  std::vector<double> cyc{0.3, 1.2, 0.7, 2.0, 0.9};
  double prev = angle_sum(1e-3, cyc);
  for (double r = 2e-3; r < 100; r *= 1.3) {
    const double s = angle_sum(r, cyc);
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(PackDisk, SevenFlower) {
  auto t = triangulation_from_disk(triangulated_disk(1));
  std::vector<double> b(t.boundary.size(), 1.0);
  auto cp = pack_disk(t, b);
  ASSERT_TRUE(cp.converged);
  EXPECT_NEAR(cp.radii[0], 1.0, 1e-8);
  for (VertexId v : t.boundary) {
    const auto& c = cp.packing.balls[v].center;
    EXPECT_NEAR(std::hypot(c[0], c[1]), 2.0, 1e-7);
  }
  EXPECT_EQ(cp.packing.balls[0].center, (std::vector<double>{0.0, 0.0}));
  const auto& first = cp.packing.balls[t.flower[0][0]].center;
  EXPECT_NEAR(first[1], 0.0, 1e-12);
  EXPECT_GT(first[0], 0.0);
}

TEST(PackDisk, DescartesInteriorRadius) {
  auto t = tetra();
  auto cp = pack_disk(t, std::vector<double>{1.0, 1.0, 1.0}, PackConfig{1e-13, 200000});
  ASSERT_TRUE(cp.converged);
  // Descartes: k4 = k1 + k2 + k3 + 2 sqrt(k1 k2 + k2 k3 + k3 k1) = 3 + 2 sqrt 3.
  EXPECT_NEAR(cp.radii[0], 1.0 / (3.0 + 2.0 * std::sqrt(3.0)), 1e-10);
  EXPECT_NEAR(cp.radii[0], 2.0 / std::sqrt(3.0) - 1.0, 1e-10);
}

TEST(PackDisk, ScaleEquivariance) {
  auto disk = triangulated_disk(3);
  auto t = triangulation_from_disk(disk);
  std::vector<double> b;
  for (std::size_t i = 0; i < t.boundary.size(); ++i) b.push_back(0.5 + 0.1 * double(i % 5));
  auto base = pack_disk(t, b, PackConfig{1e-12, 200000});
  const double c = 3.7;
  std::vector<double> scaled;
  for (double x : b) scaled.push_back(c * x);
  auto big = pack_disk(t, scaled, PackConfig{1e-12, 200000});
  ASSERT_TRUE(base.converged && big.converged);
  for (VertexId v = 0; v < base.radii.size(); ++v) EXPECT_NEAR(big.radii[v], c * base.radii[v], 1e-8 * c * base.radii[v]);
  for (VertexId v = 0; v < base.radii.size(); ++v)
    for (int k = 0; k < 2; ++k)
      EXPECT_NEAR(big.packing.balls[v].center[k], c * base.packing.balls[v].center[k], 1e-7 * c);
}

class DiskRoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(DiskRoundTrip, ContactGraphIsTheTriangulation) {
  auto t = triangulation_from_disk(triangulated_disk(GetParam()));
  const double tol = 1e-8;
  auto cp = pack_disk(t, std::vector<double>(t.boundary.size(), 1.0), PackConfig{tol, 200000});
  ASSERT_TRUE(cp.converged);
  EXPECT_LE(cp.angle_residual, tol);
  EXPECT_LE(cp.tangency_residual, 10 * tol);
  EXPECT_TRUE(verify_packing(cp.packing, 1e-6).valid());
  auto cg = contact_graph(cp.packing, kSolvedTangencyTolerance);
  EXPECT_EQ(edge_set(cg.edges), edge_set(t.graph.edges()));
}

INSTANTIATE_TEST_SUITE_P(Layers, DiskRoundTrip, ::testing::Range(1, 7));

TEST(Triangulation, RejectsNonTriangulations) {
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  try {
    make_triangulation(c4, {0, 1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTriangulation);
  }
  EXPECT_THROW(make_triangulation(c4, {0, 1, 2, 3}), Error);
}

TEST(Triangulation, FromFileWithBoundaryDirective) {
  std::stringstream ss("graph 4 6\n0 1\n0 2\n0 3\n1 2\n2 3\n1 3\nboundary: 1 2 3\n");
  auto t = triangulation_from_file(read_graph(ss));
  EXPECT_EQ(t.faces.size(), 3u);
  EXPECT_EQ(t.flower[0].size(), 3u);
}

TEST(PackDisk, RejectsBadRadii) {
  auto t = tetra();
  EXPECT_THROW(pack_disk(t, std::vector<double>{1.0, -1.0, 1.0}), Error);
  EXPECT_THROW(pack_disk(t, std::vector<double>{1.0, 1.0}), Error);
}

TEST(PackDisk, NoConvergenceIsFlagged) {
  auto t = triangulation_from_disk(triangulated_disk(4));
  auto cp = pack_disk(t, std::vector<double>(t.boundary.size(), 1.0), PackConfig{1e-15, 2});
  EXPECT_FALSE(cp.converged);
  EXPECT_EQ(cp.radii.size(), t.graph.vertex_count());
}
