#include "stgcs/gcs_graph.hpp"

namespace stgcs {

GcsGraph build_graph(const std::vector<HPolytope>& regions, double tol) {
  if (regions.empty()) throw std::invalid_argument("build_graph: no regions");
  GcsGraph g;
  g.vertices = regions;
  const int n = static_cast<int>(regions.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (hpolytopes_touch(regions[i], regions[j], tol)) {
        g.edges.emplace_back(i, j);
        g.edges.emplace_back(j, i);
      }
  return g;
}

namespace {

int containing_vertex(const GcsGraph& g, const Point& p, const char* label) {
  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (point_in_hpolytope(g.vertices[i], p, 1e-9)) return static_cast<int>(i);
  throw NoContainingSet(std::string("locate_terminals: no region contains ") + label);
}

}  // namespace

Terminals locate_terminals(const GcsGraph& g, const Point& start, const Point& goal) {
  Terminals t;
  t.source_id = containing_vertex(g, start, "start");
  t.sink_id = containing_vertex(g, goal, "goal");
  t.start = start;
  t.goal = goal;
  return t;
}

}  // namespace stgcs
