#include "stgcs/formulation.hpp"

#include <stdexcept>

namespace stgcs {

namespace {

void validate_inputs(const GcsGraph& g, const Terminals& t,
                     const FormulationParams& params, const Fixings& fix) {
  if (g.vertices.empty()) throw std::invalid_argument("assemble_relaxation: empty graph");
  const int d = (params.mode == PlanMode::SPACETIME_3D) ? 3 : 2;
  for (const auto& p : g.vertices)
    if (p.dim() != d)
      throw std::invalid_argument("assemble_relaxation: region dim does not match mode");
  if (params.spline_order < 1)
    throw std::invalid_argument("assemble_relaxation: spline order must be >= 1");
  if (params.mode == PlanMode::SPACETIME_3D) {
    if (!(params.v_max > 0.0))
      throw std::invalid_argument("assemble_relaxation: v_max must be positive");
    if (!(params.epsilon > 0.0))
      throw std::invalid_argument("assemble_relaxation: epsilon must be positive");
  }
  const int V = static_cast<int>(g.vertices.size());
  if (t.source_id < 0 || t.source_id >= V || t.sink_id < 0 || t.sink_id >= V)
    throw std::invalid_argument("assemble_relaxation: terminal vertex out of range");
  if (t.start.size() != d || t.goal.size() != d)
    throw std::invalid_argument("assemble_relaxation: terminal point dim mismatch");
  if (!point_in_hpolytope(g.vertices[t.source_id], t.start, 1e-9))
    throw std::invalid_argument("assemble_relaxation: start outside source region");
  if (!point_in_hpolytope(g.vertices[t.sink_id], t.goal, 1e-9))
    throw std::invalid_argument("assemble_relaxation: goal outside sink region");
  const int E = static_cast<int>(g.edges.size());
  for (const auto& [var, val] : fix) {
    if (var < 0 || var >= V + E)
      throw std::invalid_argument("assemble_relaxation: fixing on a non-flow variable");
    if (val != 0 && val != 1)
      throw std::invalid_argument("assemble_relaxation: fixing value must be 0 or 1");
  }
}

}  // namespace

FormulationResult assemble_relaxation(const GcsGraph& g, const Terminals& t,
                                      const FormulationParams& params,
                                      const Fixings& fix) {
  validate_inputs(g, t, params, fix);
  const bool spacetime = (params.mode == PlanMode::SPACETIME_3D);
  const int V = static_cast<int>(g.vertices.size());
  const int E = static_cast<int>(g.edges.size());
  const int d = spacetime ? 3 : 2;
  const int n = params.spline_order;
  const int tc = d - 1;  // time coordinate in spacetime mode

  VariableMap vm;
  vm.num_vertices = V;
  vm.num_edges = E;
  vm.dim = d;
  vm.order = n;

  // edges into the source or out of the sink carry no flow; their
  // variables are pinned to zero below
  std::vector<char> active(E, 1);
  std::vector<std::vector<int>> in_edges(V), out_edges(V);
  for (int e = 0; e < E; ++e) {
    auto [a, b] = g.edges[e];
    if (b == t.source_id || a == t.sink_id) {
      active[e] = 0;
      continue;
    }
    out_edges[a].push_back(e);
    in_edges[b].push_back(e);
  }

  ConicProgram prog(vm.total_vars());
  for (int v = 0; v < V; ++v)
    for (int i = 0; i < n; ++i) prog.set_objective(vm.cost_aux(v, i), 1.0);

  // ---- flow conservation: sum_in y_e - y_v = -delta_s, sum_out - y_v = -delta_f
  {
    int blk = prog.add_block(ConeTag::ZERO, 2 * V);
    int r = prog.blocks()[blk].row_offset;
    for (int v = 0; v < V; ++v) {
      for (int e : in_edges[v]) prog.add_entry(r, vm.y_edge(e), 1.0);
      prog.add_entry(r, vm.y_vertex(v), -1.0);
      prog.set_rhs(r, v == t.source_id ? -1.0 : 0.0);
      ++r;
      for (int e : out_edges[v]) prog.add_entry(r, vm.y_edge(e), 1.0);
      prog.add_entry(r, vm.y_vertex(v), -1.0);
      prog.set_rhs(r, v == t.sink_id ? -1.0 : 0.0);
      ++r;
    }
  }

  // ---- pinned variables of pruned edges
  {
    int pruned = 0;
    for (int e = 0; e < E; ++e)
      if (!active[e]) ++pruned;
    if (pruned > 0) {
      int blk = prog.add_block(ConeTag::ZERO, pruned * (1 + 2 * d));
      int r = prog.blocks()[blk].row_offset;
      for (int e = 0; e < E; ++e) {
        if (active[e]) continue;
        prog.add_entry(r++, vm.y_edge(e), 1.0);
        for (int k = 0; k < d; ++k) prog.add_entry(r++, vm.z_edge_first(e) + k, 1.0);
        for (int k = 0; k < d; ++k) prog.add_entry(r++, vm.z_edge_diff(e) + k, 1.0);
      }
    }
  }

  // ---- branching fixings
  if (!fix.empty()) {
    int blk = prog.add_block(ConeTag::ZERO, static_cast<int>(fix.size()));
    int r = prog.blocks()[blk].row_offset;
    for (const auto& [var, val] : fix) {
      prog.add_entry(r, var, 1.0);
      prog.set_rhs(r, static_cast<double>(val));
      ++r;
    }
  }

  // ---- terminal anchors: z_{src,0} = y_src * start, z_{snk,n} = y_snk * goal
  {
    int blk = prog.add_block(ConeTag::ZERO, 2 * d);
    int r = prog.blocks()[blk].row_offset;
    for (int k = 0; k < d; ++k, ++r) {
      prog.add_entry(r, vm.z_ctrl(t.source_id, 0) + k, 1.0);
      prog.add_entry(r, vm.y_vertex(t.source_id), -t.start(k));
    }
    for (int k = 0; k < d; ++k, ++r) {
      prog.add_entry(r, vm.z_ctrl(t.sink_id, n) + k, 1.0);
      prog.add_entry(r, vm.y_vertex(t.sink_id), -t.goal(k));
    }
  }

  // ---- continuity: z_{v,n} = sum_out z_{e,0}; entry side: z_{v,0} = sum_in z_{e,0}
  {
    int rows = 0;
    for (int v = 0; v < V; ++v) {
      if (v != t.sink_id) rows += d;
      if (v != t.source_id) rows += d;
    }
    int blk = rows > 0 ? prog.add_block(ConeTag::ZERO, rows) : -1;
    int r = rows > 0 ? prog.blocks()[blk].row_offset : 0;
    for (int v = 0; v < V; ++v) {
      if (v != t.sink_id)
        for (int k = 0; k < d; ++k, ++r) {
          prog.add_entry(r, vm.z_ctrl(v, n) + k, 1.0);
          for (int e : out_edges[v]) prog.add_entry(r, vm.z_edge_first(e) + k, -1.0);
        }
      if (v != t.source_id)
        for (int k = 0; k < d; ++k, ++r) {
          prog.add_entry(r, vm.z_ctrl(v, 0) + k, 1.0);
          for (int e : in_edges[v]) prog.add_entry(r, vm.z_edge_first(e) + k, -1.0);
        }
    }
  }

  // ---- differentiability: z_{v,n}-z_{v,n-1} = sum_out z_{e,diff};
  //      entry side: z_{v,1}-z_{v,0} = sum_in z_{e,diff}
  {
    int rows = 0;
    for (int v = 0; v < V; ++v) {
      if (v != t.sink_id) rows += d;
      if (v != t.source_id) rows += d;
    }
    int blk = rows > 0 ? prog.add_block(ConeTag::ZERO, rows) : -1;
    int r = rows > 0 ? prog.blocks()[blk].row_offset : 0;
    for (int v = 0; v < V; ++v) {
      if (v != t.sink_id)
        for (int k = 0; k < d; ++k, ++r) {
          prog.add_entry(r, vm.z_ctrl(v, n) + k, 1.0);
          prog.add_entry(r, vm.z_ctrl(v, n - 1) + k, -1.0);
          for (int e : out_edges[v]) prog.add_entry(r, vm.z_edge_diff(e) + k, -1.0);
        }
      if (v != t.source_id)
        for (int k = 0; k < d; ++k, ++r) {
          prog.add_entry(r, vm.z_ctrl(v, 1) + k, 1.0);
          prog.add_entry(r, vm.z_ctrl(v, 0) + k, -1.0);
          for (int e : in_edges[v]) prog.add_entry(r, vm.z_edge_diff(e) + k, -1.0);
        }
    }
  }

  // ---- bounds 0 <= y <= 1
  {
    int blk = prog.add_block(ConeTag::NONNEG, 2 * (V + E));
    int r = prog.blocks()[blk].row_offset;
    for (int i = 0; i < V + E; ++i, ++r) prog.add_entry(r, i, -1.0);
    for (int i = 0; i < V + E; ++i, ++r) {
      prog.add_entry(r, i, 1.0);
      prog.set_rhs(r, 1.0);
    }
  }

  // ---- vertex memberships A_v z_{v,i} <= d_v y_v
  {
    int rows = 0;
    for (int v = 0; v < V; ++v) rows += (n + 1) * g.vertices[v].rows();
    int blk = prog.add_block(ConeTag::NONNEG, rows);
    int r = prog.blocks()[blk].row_offset;
    for (int v = 0; v < V; ++v) {
      const auto& A = g.vertices[v].A();
      const auto& dv = g.vertices[v].d();
      for (int i = 0; i <= n; ++i)
        for (int row = 0; row < A.rows(); ++row, ++r) {
          for (int k = 0; k < d; ++k) prog.add_entry(r, vm.z_ctrl(v, i) + k, A(row, k));
          prog.add_entry(r, vm.y_vertex(v), -dv(row));
        }
    }
  }

  // ---- edge auxiliary memberships in the target set, for both the entry
  //      point and the entry point plus the difference vector
  {
    int rows = 0;
    for (int e = 0; e < E; ++e) rows += 2 * g.vertices[g.edges[e].second].rows();
    int blk = rows > 0 ? prog.add_block(ConeTag::NONNEG, rows) : -1;
    int r = rows > 0 ? prog.blocks()[blk].row_offset : 0;
    for (int e = 0; e < E; ++e) {
      const auto& B = g.vertices[g.edges[e].second];
      for (int row = 0; row < B.rows(); ++row, ++r) {
        for (int k = 0; k < d; ++k) prog.add_entry(r, vm.z_edge_first(e) + k, B.A()(row, k));
        prog.add_entry(r, vm.y_edge(e), -B.d()(row));
      }
      for (int row = 0; row < B.rows(); ++row, ++r) {
        for (int k = 0; k < d; ++k) {
          prog.add_entry(r, vm.z_edge_first(e) + k, B.A()(row, k));
          prog.add_entry(r, vm.z_edge_diff(e) + k, B.A()(row, k));
        }
        prog.add_entry(r, vm.y_edge(e), -B.d()(row));
      }
    }
  }

  if (spacetime) {
    // ---- minimum time separation between consecutive control points
    {
      int blk = prog.add_block(ConeTag::NONNEG, V * n + E);
      int r = prog.blocks()[blk].row_offset;
      for (int v = 0; v < V; ++v)
        for (int i = 0; i < n; ++i, ++r) {
          prog.add_entry(r, vm.z_ctrl(v, i) + tc, 1.0);
          prog.add_entry(r, vm.z_ctrl(v, i + 1) + tc, -1.0);
          prog.add_entry(r, vm.y_vertex(v), params.epsilon);
        }
      for (int e = 0; e < E; ++e, ++r) {
        prog.add_entry(r, vm.z_edge_diff(e) + tc, -1.0);
        prog.add_entry(r, vm.y_edge(e), params.epsilon);
      }
    }

    // ---- velocity cones ||dz_xy|| <= v_max dz_t per control-point pair
    for (int v = 0; v < V; ++v)
      for (int i = 0; i < n; ++i) {
        int blk = prog.add_block(ConeTag::SOC, 3);
        int r = prog.blocks()[blk].row_offset;
        prog.add_entry(r, vm.z_ctrl(v, i + 1) + tc, -params.v_max);
        prog.add_entry(r, vm.z_ctrl(v, i) + tc, params.v_max);
        for (int k = 0; k < 2; ++k) {
          prog.add_entry(r + 1 + k, vm.z_ctrl(v, i + 1) + k, -1.0);
          prog.add_entry(r + 1 + k, vm.z_ctrl(v, i) + k, 1.0);
        }
      }
    for (int e = 0; e < E; ++e) {
      int blk = prog.add_block(ConeTag::SOC, 3);
      int r = prog.blocks()[blk].row_offset;
      prog.add_entry(r, vm.z_edge_diff(e) + tc, -params.v_max);
      for (int k = 0; k < 2; ++k) prog.add_entry(r + 1 + k, vm.z_edge_diff(e) + k, -1.0);
    }
  }

  // ---- cost epigraph: aux >= ||(z_{v,i+1} - z_{v,i})_xy||
  for (int v = 0; v < V; ++v)
    for (int i = 0; i < n; ++i) {
      int blk = prog.add_block(ConeTag::SOC, 3);
      int r = prog.blocks()[blk].row_offset;
      prog.add_entry(r, vm.cost_aux(v, i), -1.0);
      for (int k = 0; k < 2; ++k) {
        prog.add_entry(r + 1 + k, vm.z_ctrl(v, i + 1) + k, -1.0);
        prog.add_entry(r + 1 + k, vm.z_ctrl(v, i) + k, 1.0);
      }
    }

  return FormulationResult{std::move(prog), vm, std::move(active)};
}

}  // namespace stgcs
