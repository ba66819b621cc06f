#pragma once

#include <map>
#include <vector>

#include "stgcs/conic.hpp"
#include "stgcs/gcs_graph.hpp"

namespace stgcs {

struct FormulationParams {
  int spline_order = 3;  // n: each vertex curve has n+1 control points
  double v_max = 0.0;    // speed limit, spacetime mode only
  double epsilon = 0.0;  // minimum time separation between control points
  PlanMode mode = PlanMode::SPACETIME_3D;
};

// Branching decisions: y variable index -> fixed value in {0, 1}. Ordered
// so assembly is deterministic.
using Fixings = std::map<int, int>;

// Contiguous variable layout of the relaxation:
//   [y_v | y_e | z_ctrl | z_edge_first | z_edge_diff | cost auxiliaries]
struct VariableMap {
  int num_vertices = 0;
  int num_edges = 0;
  int dim = 0;
  int order = 0;

  int y_vertex(int v) const { return v; }
  int y_edge(int e) const { return num_vertices + e; }
  int z_ctrl(int v, int i) const {
    return num_vertices + num_edges + (v * (order + 1) + i) * dim;
  }
  int z_edge_first(int e) const {
    return num_vertices + num_edges + num_vertices * (order + 1) * dim + e * dim;
  }
  int z_edge_diff(int e) const { return z_edge_first(num_edges) + e * dim; }
  int mapped_vars() const { return z_edge_diff(num_edges); }
  int cost_aux(int v, int i) const { return mapped_vars() + v * order + i; }
  int total_vars() const { return mapped_vars() + num_vertices * order; }
};

struct FormulationResult {
  ConicProgram program;
  VariableMap vmap;
  // Edges retained by the flow structure; edges into the source and out of
  // the sink are excluded and their variables pinned to zero.
  std::vector<char> edge_active;
};

// Builds the relaxed conic program over the graph: flow conservation,
// y-scaled set memberships, continuity and differentiability couplings
// through edge auxiliaries, terminal anchors, speed/causality cones in
// spacetime mode, and the epigraph of the control-polygon length cost.
FormulationResult assemble_relaxation(const GcsGraph& g, const Terminals& t,
                                      const FormulationParams& params,
                                      const Fixings& fix = {});

}  // namespace stgcs
