#include "stgcs/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace stgcs {

BezierSegment::BezierSegment(std::vector<Point> pts) : control(std::move(pts)) {
  if (control.empty()) throw std::invalid_argument("bezier: no control points");
  const auto d = control.front().size();
  for (const auto& p : control) {
    if (p.size() != d) throw std::invalid_argument("bezier: mixed control dims");
    if (!p.allFinite()) throw std::invalid_argument("bezier: non-finite control point");
  }
}

Point bezier_eval(const BezierSegment& seg, double s) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("bezier_eval: s outside [0,1]");
  std::vector<Point> p = seg.control;
  for (size_t r = 1; r < seg.control.size(); ++r)
    for (size_t i = 0; i + r < seg.control.size(); ++i)
      p[i] = (1.0 - s) * p[i] + s * p[i + 1];
  return p[0];
}

BezierSegment bezier_derivative(const BezierSegment& seg) {
  const int n = seg.degree();
  if (n < 1) throw std::invalid_argument("bezier_derivative: constant segment");
  std::vector<Point> d;
  d.reserve(n);
  for (int k = 0; k < n; ++k) d.push_back(n * (seg.control[k + 1] - seg.control[k]));
  return BezierSegment(std::move(d));
}

BezierSegment spatial_projection(const BezierSegment& seg, PlanMode mode) {
  if (mode == PlanMode::STATIC_2D) return seg;
  std::vector<Point> p;
  p.reserve(seg.control.size());
  for (const auto& c : seg.control) p.push_back(c.head(c.size() - 1));
  return BezierSegment(std::move(p));
}

ArcLengthBounds arc_length_bounds(const BezierSegment& seg, int samples) {
  if (samples < 2) throw std::invalid_argument("arc_length_bounds: too few samples");
  ArcLengthBounds out;
  for (size_t k = 0; k + 1 < seg.control.size(); ++k)
    out.upper += (seg.control[k + 1] - seg.control[k]).norm();
  Point prev = seg.control.front();
  for (int i = 1; i <= samples; ++i) {
    Point cur = bezier_eval(seg, static_cast<double>(i) / samples);
    out.lower += (cur - prev).norm();
    prev = cur;
  }
  return out;
}

Trajectory::Trajectory(std::vector<BezierSegment> segments, PlanMode mode)
    : segments_(std::move(segments)), mode_(mode) {
  if (segments_.empty()) throw std::invalid_argument("trajectory: no segments");
  const int want_dim = (mode == PlanMode::SPACETIME_3D) ? 3 : 2;
  for (const auto& s : segments_) {
    if (s.dim() != want_dim) throw std::invalid_argument("trajectory: segment dim mismatch");
    if (s.degree() < 1) throw std::invalid_argument("trajectory: constant segment");
  }
  for (size_t i = 0; i + 1 < segments_.size(); ++i) {
    double gap = (segments_[i].control.back() - segments_[i + 1].control.front()).norm();
    if (gap > 1e-6) throw std::invalid_argument("trajectory: junction gap exceeds 1e-6");
  }
  if (mode == PlanMode::SPACETIME_3D) {
    double prev_t = segments_.front().control.front()(2);
    bool first = true;
    for (const auto& s : segments_)
      for (const auto& c : s.control) {
        if (first) {
          first = false;
          continue;
        }
        // junction control points coincide and numerically produced segments
        // carry solver-tolerance noise; reject only decreases beyond the
        // junction tolerance
        if (c(2) <= prev_t - 1e-6) throw std::invalid_argument("trajectory: time not increasing");
        prev_t = std::max(prev_t, c(2));
      }
  }
}

double Trajectory::start_time() const {
  if (mode_ != PlanMode::SPACETIME_3D) throw std::logic_error("start_time: spacetime only");
  return segments_.front().control.front()(2);
}

double Trajectory::end_time() const {
  if (mode_ != PlanMode::SPACETIME_3D) throw std::logic_error("end_time: spacetime only");
  return segments_.back().control.back()(2);
}

Eigen::Vector2d position_at_time(const Trajectory& traj, double t) {
  if (traj.mode() != PlanMode::SPACETIME_3D)
    throw std::logic_error("position_at_time: spacetime only");
  const double t0 = traj.start_time();
  const double tf = traj.end_time();
  if (t < t0 - 1e-9 || t > tf + 1e-9)
    throw std::invalid_argument("position_at_time: time outside trajectory span");
  t = std::clamp(t, t0, tf);
  // pick the segment whose time range covers t
  const BezierSegment* seg = nullptr;
  for (const auto& s : traj.segments()) {
    if (t <= s.control.back()(2) + 1e-12) {
      seg = &s;
      break;
    }
  }
  if (!seg) seg = &traj.segments().back();
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double midpoint = 0.5 * (lo + hi);
    double tm = bezier_eval(*seg, midpoint)(2);
    if (std::abs(tm - t) <= 1e-9) {
      lo = hi = midpoint;
      break;
    }
    if (tm < t) lo = midpoint;
    else hi = midpoint;
    if (hi - lo < 1e-15) break;
  }
  Point p = bezier_eval(*seg, 0.5 * (lo + hi));
  return p.head<2>();
}

}  // namespace stgcs
