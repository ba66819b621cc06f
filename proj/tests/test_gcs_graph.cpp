#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "stgcs/gcs_graph.hpp"

using namespace stgcs;

namespace {

HPolytope box(double x0, double y0, double x1, double y1) {
  Eigen::VectorXd lo(2), hi(2);
  lo << x0, y0;
  hi << x1, y1;
  return HPolytope::from_box(lo, hi);
}

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

// four rectangles around a central hole, each touching its two neighbors
std::vector<HPolytope> touching_ring() {
  return {box(0.0, 0.0, 1.0, 0.2), box(0.0, 0.4, 1.0, 1.0),
          box(0.6, 0.2, 1.0, 0.4), box(0.0, 0.2, 0.3, 0.4)};
}

}  // namespace

TEST_CASE("four sets in a touching ring produce eight directed edges") {
  GcsGraph g = build_graph(touching_ring(), 1e-7);
  REQUIRE(g.vertices.size() == 4);
  CHECK(g.edges.size() == 8);
  std::set<std::pair<int, int>> e(g.edges.begin(), g.edges.end());
  std::set<std::pair<int, int>> expect = {{0, 2}, {2, 0}, {0, 3}, {3, 0},
                                          {1, 2}, {2, 1}, {1, 3}, {3, 1}};
  CHECK(e == expect);
}

TEST_CASE("a single region yields no edges") {
  GcsGraph g = build_graph({box(0, 0, 1, 1)}, 1e-7);
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.empty());
}

TEST_CASE("regions separated by a gap yield no edges") {
  GcsGraph g = build_graph({box(0, 0, 1, 1), box(1.5, 0, 2.5, 1)}, 1e-7);
  CHECK(g.edges.empty());
}

TEST_CASE("empty region list is rejected") {
  CHECK_THROWS_AS(build_graph({}, 1e-7), std::invalid_argument);
}

TEST_CASE("edge set is symmetric and endpoints touch") {
  GcsGraph g = build_graph(touching_ring(), 1e-7);
  std::set<std::pair<int, int>> e(g.edges.begin(), g.edges.end());
  for (auto [a, b] : g.edges) {
    CHECK(a != b);
    CHECK(e.count({b, a}) == 1);
    CHECK(hpolytopes_touch(g.vertices[a], g.vertices[b], 1e-7));
  }
}

TEST_CASE("a chain of abutting boxes has two edges per junction") {
  std::vector<HPolytope> chain;
  const int n = 6;
  for (int i = 0; i < n; ++i) chain.push_back(box(i, 0.0, i + 1.0, 1.0));
  GcsGraph g = build_graph(chain, 1e-7);
  CHECK(g.edges.size() == static_cast<size_t>(2 * (n - 1)));
  for (auto [a, b] : g.edges) CHECK(std::abs(a - b) == 1);
}

TEST_CASE("build_graph is deterministic") {
  GcsGraph g1 = build_graph(touching_ring(), 1e-7);
  GcsGraph g2 = build_graph(touching_ring(), 1e-7);
  CHECK(g1.edges == g2.edges);
}

TEST_CASE("terminals resolve to containing vertices") {
  GcsGraph g = build_graph(touching_ring(), 1e-7);
  Terminals t = locate_terminals(g, vec2(0.5, 0.1), vec2(0.5, 0.7));
  CHECK(t.source_id == 0);
  CHECK(t.sink_id == 1);
  CHECK((t.start - vec2(0.5, 0.1)).norm() == 0.0);
  CHECK((t.goal - vec2(0.5, 0.7)).norm() == 0.0);
}

TEST_CASE("boundary points tie-break to the lowest vertex id") {
  GcsGraph g = build_graph(touching_ring(), 1e-7);
  // (0.7, 0.2) lies on the shared facet of vertices 0 and 2
  Terminals t = locate_terminals(g, vec2(0.7, 0.2), vec2(0.7, 0.4));
  CHECK(t.source_id == 0);
  // (0.7, 0.4) is shared between 1 and 2
  CHECK(t.sink_id == 1);
}

TEST_CASE("uncontained terminals raise NoContainingSet") {
  GcsGraph g = build_graph(touching_ring(), 1e-7);
  CHECK_THROWS_WITH_AS(locate_terminals(g, vec2(0.45, 0.3), vec2(0.5, 0.5)),
                       "locate_terminals: no region contains start", NoContainingSet);
  CHECK_THROWS_WITH_AS(locate_terminals(g, vec2(0.5, 0.1), vec2(0.45, 0.3)),
                       "locate_terminals: no region contains goal", NoContainingSet);
}
