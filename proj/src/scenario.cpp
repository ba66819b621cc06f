#include "stgcs/scenario.hpp"

namespace stgcs {

namespace {

HPolytope scenario_bounds(const Scenario& sc) {
  if (sc.mode == PlanMode::STATIC_2D)
    return HPolytope::from_box(sc.bounds_min, sc.bounds_max);
  Eigen::Vector3d lo, hi;
  lo << sc.bounds_min(0), sc.bounds_min(1), sc.t_start;
  hi << sc.bounds_max(0), sc.bounds_max(1), sc.t_end;
  return HPolytope::from_box(lo, hi);
}

}  // namespace

Environment scenario_environment(const Scenario& sc) {
  Environment env{scenario_bounds(sc), {}, sc.mode};
  env.obstacles.reserve(sc.obstacles.size());
  for (const auto& o : sc.obstacles)
    env.obstacles.push_back(extrude_obstacle(o.start_shape, o.end_shape, sc.t_start, sc.t_end));
  return env;
}

Eigen::VectorXd lift_start(const Scenario& sc) {
  if (sc.mode == PlanMode::STATIC_2D) return sc.start;
  Eigen::Vector3d p;
  p << sc.start(0), sc.start(1), sc.t_start;
  return p;
}

Eigen::VectorXd lift_goal(const Scenario& sc) {
  if (sc.mode == PlanMode::STATIC_2D) return sc.goal;
  Eigen::Vector3d p;
  p << sc.goal(0), sc.goal(1), sc.t_end;
  return p;
}

FormulationParams scenario_params(const Scenario& sc) {
  FormulationParams p;
  p.mode = sc.mode;
  p.spline_order = sc.spline_order;
  p.v_max = sc.v_max;
  p.epsilon = sc.epsilon;
  return p;
}

}  // namespace stgcs
