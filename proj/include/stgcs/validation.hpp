#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stgcs/scenario.hpp"
#include "stgcs/spline.hpp"

namespace stgcs {

// One sampled penetration of an obstacle.
struct CollisionEvent {
  double t = 0.0;               // sample time (chain parameter when static)
  Eigen::Vector2d point = Eigen::Vector2d::Zero();
  int obstacle = -1;            // index into Scenario::obstacles
};

struct ValidationReport {
  std::vector<CollisionEvent> collision_events;
  double max_speed = 0.0;  // finite-difference estimate; 0 in static mode
  double max_junction_continuity_residual = 0.0;
  double max_junction_diff_residual = 0.0;
  Eigen::Vector2d terminal_errors = Eigen::Vector2d::Zero();  // (start, goal)
  bool time_monotone = true;
  bool passed = false;
};

// Position for sampling and export: spacetime trajectories are queried at
// time t (clamped to their span); static chains map t linearly over
// [t0, tf] onto the concatenated segments.
Eigen::Vector2d sample_position(const Trajectory& traj, double t, double t0, double tf);

// Certifies a trajectory against the scenario by dense time sampling:
// point-in-obstacle tests at step dt with the given inflation margin,
// finite-difference speed versus v_max, junction residuals straight from
// the control points, and terminal attainment. The checks use only the
// geometric primitives, independent of the optimization stack.
ValidationReport validate_solution(const Trajectory& traj, const Scenario& scenario,
                                   double dt = 1e-3, double margin = 0.0,
                                   double tol = 1e-6);

// Same checks on a raw segment chain that need not satisfy the Trajectory
// invariants (externally loaded or deliberately broken solutions): junction
// gaps and time reversals become report entries instead of exceptions.
ValidationReport validate_segments(const std::vector<BezierSegment>& segments,
                                   PlanMode mode, const Scenario& scenario,
                                   double dt = 1e-3, double margin = 0.0,
                                   double tol = 1e-6);

}  // namespace stgcs
