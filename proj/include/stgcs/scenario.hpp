#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stgcs/geometry.hpp"
#include "stgcs/iris.hpp"
#include "stgcs/solver.hpp"

namespace stgcs {

// Obstacle keyframes: the shape at the horizon start and end. Motion is
// vertexwise linear interpolation; static scenarios use identical keyframes.
struct ObstacleSpec {
  ConvexPolygon2D start_shape;
  ConvexPolygon2D end_shape;
};

// Full problem description as loaded from a scenario file.
struct Scenario {
  PlanMode mode = PlanMode::SPACETIME_3D;
  Eigen::Vector2d bounds_min = Eigen::Vector2d::Zero();
  Eigen::Vector2d bounds_max = Eigen::Vector2d::Ones();
  double t_start = 0.0;
  double t_end = 1.0;
  Eigen::Vector2d start = Eigen::Vector2d::Zero();
  Eigen::Vector2d goal = Eigen::Vector2d::Ones();
  double v_max = 0.0;  // required positive in spacetime mode
  double epsilon = 1e-3;
  int spline_order = 3;
  std::vector<ObstacleSpec> obstacles;

  int iris_samples = 100;
  unsigned long long iris_seed = 0;
  IrisParams iris;
  BnBOptions solver;
};

// Workspace for region generation: xy bounds (lifted by the time axis in
// spacetime mode) plus the obstacle prisms.
Environment scenario_environment(const Scenario& sc);

// Start/goal lifted to the planning dimension (time appended in spacetime).
Eigen::VectorXd lift_start(const Scenario& sc);
Eigen::VectorXd lift_goal(const Scenario& sc);

// Planner parameters implied by the scenario.
FormulationParams scenario_params(const Scenario& sc);

}  // namespace stgcs
