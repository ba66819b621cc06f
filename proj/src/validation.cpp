#include "stgcs/validation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stgcs {

namespace {

// Static-mode chain evaluation at u in [0, 1] across all segments.
Eigen::Vector2d chain_eval(const std::vector<BezierSegment>& segs, double u) {
  const int n = static_cast<int>(segs.size());
  double pos = std::clamp(u, 0.0, 1.0) * n;
  int idx = std::min(static_cast<int>(pos), n - 1);
  return bezier_eval(segs[idx], pos - idx).head<2>();
}

// Time samples may overshoot an obstacle lifetime by roundoff only.
bool inside_obstacle_at(const SpaceTimeObstacle& obs, double t,
                        const Eigen::Vector2d& p, double margin) {
  if (t < obs.t_start() - 1e-12 || t > obs.t_end() + 1e-12) return false;
  double tc = std::clamp(t, obs.t_start(), obs.t_end());
  return point_in_polygon(obstacle_cross_section(obs, tc), p, margin);
}

// Grid stepped exactly by dt from lo so refining dt keeps every coarser
// sample point.
std::vector<double> sample_grid(double lo, double hi, double dt) {
  std::vector<double> ts;
  for (double t = lo; t < hi; t += dt) ts.push_back(t);
  ts.push_back(hi);
  return ts;
}

}  // namespace

Eigen::Vector2d sample_position(const Trajectory& traj, double t, double t0, double tf) {
  if (traj.mode() == PlanMode::SPACETIME_3D)
    return position_at_time(traj, std::clamp(t, traj.start_time(), traj.end_time()));
  if (!(tf > t0)) throw std::invalid_argument("sample_position: empty horizon");
  return chain_eval(traj.segments(), std::clamp((t - t0) / (tf - t0), 0.0, 1.0));
}

ValidationReport validate_segments(const std::vector<BezierSegment>& segs, PlanMode mode,
                                   const Scenario& scenario, double dt, double margin,
                                   double tol) {
  if (!(dt > 0.0)) throw std::invalid_argument("validate_segments: dt must be positive");
  if (segs.empty()) throw std::invalid_argument("validate_segments: no segments");
  const bool spacetime = mode == PlanMode::SPACETIME_3D;
  ValidationReport report;

  // Obstacles as prisms over the scenario horizon; static keyframes give a
  // constant cross-section.
  std::vector<SpaceTimeObstacle> obstacles;
  obstacles.reserve(scenario.obstacles.size());
  for (const auto& o : scenario.obstacles)
    obstacles.push_back(
        extrude_obstacle(o.start_shape, o.end_shape, scenario.t_start, scenario.t_end));

  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    const auto& a = segs[i].control;
    const auto& b = segs[i + 1].control;
    report.max_junction_continuity_residual =
        std::max(report.max_junction_continuity_residual, (a.back() - b.front()).norm());
    Point da = segs[i].degree() * (a[a.size() - 1] - a[a.size() - 2]);
    Point db = segs[i + 1].degree() * (b[1] - b[0]);
    report.max_junction_diff_residual =
        std::max(report.max_junction_diff_residual, (da - db).norm());
  }

  report.terminal_errors(0) = (segs.front().control.front() - lift_start(scenario)).norm();
  report.terminal_errors(1) = (segs.back().control.back() - lift_goal(scenario)).norm();

  if (spacetime) {
    double prev = segs.front().control.front()(2);
    for (const auto& seg : segs) {
      for (int k = 0; k <= 64; ++k) {
        double t = bezier_eval(seg, k / 64.0)(2);
        if (t < prev - tol) report.time_monotone = false;
        prev = std::max(prev, t);
      }
    }
  }

  // Sampled (t, xy) states. Well-formed spacetime chains are indexed by
  // time; malformed ones fall back to per-segment parameter sampling so the
  // oracle still reports rather than throws.
  std::vector<double> ts;
  std::vector<Eigen::Vector2d> xy;
  if (!spacetime) {
    ts = sample_grid(scenario.t_start, scenario.t_end, dt);
    if (ts.size() < 2) throw std::invalid_argument("validate_segments: empty horizon");
    for (double t : ts)
      xy.push_back(chain_eval(
          segs, (t - scenario.t_start) / (scenario.t_end - scenario.t_start)));
  } else {
    bool indexed = false;
    try {
      Trajectory traj(segs, mode);
      for (double t : sample_grid(traj.start_time(), traj.end_time(), dt)) {
        ts.push_back(t);
        xy.push_back(position_at_time(traj, t));
      }
      indexed = true;
    } catch (const std::exception&) {
      // fall through to parameter sampling
    }
    if (!indexed) {
      ts.clear();
      xy.clear();
      for (const auto& seg : segs) {
        double span = std::abs(seg.control.back()(2) - seg.control.front()(2));
        int m = std::max(2, static_cast<int>(std::ceil(span / dt)));
        for (int k = 0; k <= m; ++k) {
          Point p = bezier_eval(seg, static_cast<double>(k) / m);
          ts.push_back(p(2));
          xy.push_back(p.head<2>());
        }
      }
    }
  }

  for (size_t k = 0; k < ts.size(); ++k)
    for (size_t i = 0; i < obstacles.size(); ++i)
      if (inside_obstacle_at(obstacles[i], ts[k], xy[k], margin))
        report.collision_events.push_back({ts[k], xy[k], static_cast<int>(i)});

  if (spacetime) {
    for (size_t k = 1; k + 1 < ts.size(); ++k) {
      double span = ts[k + 1] - ts[k - 1];
      if (span <= 0.0) continue;
      report.max_speed = std::max(report.max_speed, (xy[k + 1] - xy[k - 1]).norm() / span);
    }
  }

  bool speed_ok = !spacetime || report.max_speed <= scenario.v_max * (1.0 + tol);
  report.passed = report.collision_events.empty() && speed_ok &&
                  report.max_junction_continuity_residual <= tol &&
                  report.max_junction_diff_residual <= tol &&
                  report.terminal_errors.maxCoeff() <= tol && report.time_monotone;
  return report;
}

ValidationReport validate_solution(const Trajectory& traj, const Scenario& scenario,
                                   double dt, double margin, double tol) {
  return validate_segments(traj.segments(), traj.mode(), scenario, dt, margin, tol);
}

}  // namespace stgcs
