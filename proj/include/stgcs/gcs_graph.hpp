#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stgcs/geometry.hpp"

namespace stgcs {

// Directed adjacency graph over convex regions. Vertex ids are dense
// indices into `vertices`; both directions are present for every touching
// pair.
struct GcsGraph {
  std::vector<HPolytope> vertices;
  std::vector<std::pair<int, int>> edges;
};

struct Terminals {
  int source_id = -1;
  int sink_id = -1;
  Point start;
  Point goal;
};

struct NoContainingSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Connects every pair of regions whose closed sets meet within tol, adding
// both edge directions. Vertices keep the input order.
GcsGraph build_graph(const std::vector<HPolytope>& regions, double tol = 1e-7);

// Finds the vertices containing the start and goal points (tol 1e-9); ties
// on shared boundaries go to the lowest vertex id.
Terminals locate_terminals(const GcsGraph& g, const Point& start, const Point& goal);

}  // namespace stgcs
