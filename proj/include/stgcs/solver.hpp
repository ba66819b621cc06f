#pragma once

#include <stdexcept>
#include <vector>

#include "stgcs/formulation.hpp"
#include "stgcs/spline.hpp"

namespace stgcs {

enum class NodeOrder { BEST_FIRST };
enum class BranchRule { MOST_FRACTIONAL_EDGE };

struct BnBOptions {
  double integrality_tol = 1e-4;  // max fractionality treated as integral
  double gap_tol = 1e-6;          // absolute bound gap for termination
  int max_nodes = 10000;
  NodeOrder node_order = NodeOrder::BEST_FIRST;
  BranchRule branch_rule = BranchRule::MOST_FRACTIONAL_EDGE;
  bool verbose = false;  // per-node trace on std::clog
};

struct SolveStats {
  int nodes_explored = 0;
  int relaxations_solved = 0;
  double root_relaxation_cost = 0.0;
  double time_relaxation = 0.0;   // seconds in relaxation solves
  double time_restriction = 0.0;  // seconds in path restrictions
  double time_total = 0.0;
  bool node_limit_hit = false;
  bool inexact = false;  // a subproblem ended in numerical failure
};

struct Solution {
  std::vector<int> path;  // source..sink vertex ids
  Trajectory trajectory;
  double cost = 0.0;
  double lower_bound = 0.0;
  SolveStats stats;
};

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DeadEnd : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Greedy walk from source to sink following the strongest outgoing flow
// among unvisited vertices; flows below threshold are ignored. y_values is
// the [vertex flows | edge flows] slice of a relaxation solution.
std::vector<int> extract_path(const Eigen::VectorXd& y_values, const GcsGraph& g,
                              const Terminals& t, double threshold = 1e-3);

struct Restriction {
  std::vector<BezierSegment> segments;  // one curve per path vertex
  double cost = 0.0;
};

// Solves the convex program with the given chain fully activated and all
// other flow pinned to zero; the resulting cost certifies an upper bound.
Restriction convex_restriction(const GcsGraph& g, const Terminals& t,
                               const std::vector<int>& path,
                               const FormulationParams& params);

// Best-first branch-and-bound over edge flows with deterministic rounding
// (extract_path + convex_restriction at every explored node).
Solution solve_gcs(const GcsGraph& g, const Terminals& t,
                   const FormulationParams& params, const BnBOptions& opts = {});

}  // namespace stgcs
