#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stgcs/geometry.hpp"

namespace stgcs {

// Bezier curve over [0,1] given by its control points (all the same dim).
struct BezierSegment {
  std::vector<Point> control;

  explicit BezierSegment(std::vector<Point> pts);
  int degree() const { return static_cast<int>(control.size()) - 1; }
  int dim() const { return static_cast<int>(control.front().size()); }
};

// De Casteljau evaluation at s in [0,1].
Point bezier_eval(const BezierSegment& seg, double s);

// Hodograph: control points n * (x_{k+1} - x_k).
BezierSegment bezier_derivative(const BezierSegment& seg);

// Drops the trailing time coordinate in spacetime mode.
BezierSegment spatial_projection(const BezierSegment& seg, PlanMode mode);

struct ArcLengthBounds {
  double lower = 0.0;  // sampled polyline length, converges from below
  double upper = 0.0;  // control polygon length
};
ArcLengthBounds arc_length_bounds(const BezierSegment& seg, int samples = 256);

// Piecewise Bezier path. Consecutive segments must join within 1e-6; in
// spacetime mode the time coordinate must increase strictly across every
// control point of the chain.
class Trajectory {
 public:
  Trajectory(std::vector<BezierSegment> segments, PlanMode mode);

  const std::vector<BezierSegment>& segments() const { return segments_; }
  PlanMode mode() const { return mode_; }
  double start_time() const;  // spacetime only
  double end_time() const;

 private:
  std::vector<BezierSegment> segments_;
  PlanMode mode_;
};

// Spatial position at query time, via bisection on the monotone time
// component (tolerance 1e-9). Spacetime trajectories only.
Eigen::Vector2d position_at_time(const Trajectory& traj, double t);

}  // namespace stgcs
