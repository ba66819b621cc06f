#include "stgcs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stgcs/conic.hpp"

namespace stgcs {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace

//--------------------------------------------------------------------------
// HPolytope
//--------------------------------------------------------------------------

HPolytope::HPolytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& d) {
  if (A.rows() != d.size()) throw std::invalid_argument("hpolytope: A/d row mismatch");
  if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("hpolytope: empty system");
  require_finite(A, "hpolytope");
  require_finite(d, "hpolytope");
  A_ = A;
  d_ = d;
  for (int i = 0; i < A_.rows(); ++i) {
    double n = A_.row(i).norm();
    if (n < 1e-12) throw std::invalid_argument("hpolytope: zero row");
    A_.row(i) /= n;
    d_(i) /= n;
  }
  ChebyshevBall ball = chebyshev_ball(A_, d_);
  if (!ball.bounded_radius) return;  // contains arbitrarily large balls
  if (ball.radius < -1e-9) throw std::invalid_argument("hpolytope: empty set");
}

HPolytope HPolytope::from_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int d = static_cast<int>(lo.size());
  if (hi.size() != d) throw std::invalid_argument("hpolytope: box dim mismatch");
  for (int i = 0; i < d; ++i)
    if (!(lo(i) <= hi(i))) throw std::invalid_argument("hpolytope: box lo > hi");
  Eigen::MatrixXd A(2 * d, d);
  Eigen::VectorXd rhs(2 * d);
  A.setZero();
  for (int i = 0; i < d; ++i) {
    A(2 * i, i) = 1.0;
    rhs(2 * i) = hi(i);
    A(2 * i + 1, i) = -1.0;
    rhs(2 * i + 1) = -lo(i);
  }
  return HPolytope(A, rhs);
}

HPolytope HPolytope::from_vertices_2d(const std::vector<Eigen::Vector2d>& verts) {
  ConvexPolygon2D poly(verts);  // validates convexity and orientation
  const auto& v = poly.vertices();
  const int k = static_cast<int>(v.size());
  Eigen::MatrixXd A(k, 2);
  Eigen::VectorXd d(k);
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d e = v[(i + 1) % k] - v[i];
    Eigen::Vector2d n(e(1), -e(0));  // outward for CCW order
    A.row(i) = n.transpose();
    d(i) = n.dot(v[i]);
  }
  return HPolytope(A, d);
}

ChebyshevBall chebyshev_ball(const Eigen::MatrixXd& A, const Eigen::VectorXd& d) {
  // max r  s.t.  a_i'c + ||a_i|| r <= d_i
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  ConicProgram prog(n + 1);
  prog.set_objective(n, -1.0);
  int b = prog.add_block(ConeTag::NONNEG, m);
  int r0 = prog.blocks()[b].row_offset;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) prog.add_entry(r0 + i, j, A(i, j));
    prog.add_entry(r0 + i, n, A.row(i).norm());
    prog.set_rhs(r0 + i, d(i));
  }
  auto sol = solve_conic(prog);
  ChebyshevBall ball;
  if (sol.status == SolveStatus::UNBOUNDED) {
    ball.bounded_radius = false;
    ball.radius = std::numeric_limits<double>::infinity();
    ball.center = Eigen::VectorXd::Zero(n);
    return ball;
  }
  if (sol.status != SolveStatus::OPTIMAL)
    throw std::runtime_error("chebyshev_ball: solve failed");
  ball.center = sol.primal.head(n);
  ball.radius = sol.primal(n);
  return ball;
}

bool point_in_hpolytope(const HPolytope& p, const Point& x, double tol) {
  if (x.size() != p.dim()) throw std::invalid_argument("point_in_hpolytope: dim mismatch");
  if (tol < 0) throw std::invalid_argument("point_in_hpolytope: negative tol");
  return ((p.A() * x - p.d()).maxCoeff() <= tol);
}

bool hpolytopes_touch(const HPolytope& a, const HPolytope& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("hpolytopes_touch: dim mismatch");
  // min t  s.t.  A1 x <= d1 + t,  A2 x <= d2 + t; intersect iff t* <= tol
  const int n = a.dim();
  ConicProgram prog(n + 1);
  prog.set_objective(n, 1.0);
  const int m1 = a.rows(), m2 = b.rows();
  int blk = prog.add_block(ConeTag::NONNEG, m1 + m2);
  int r0 = prog.blocks()[blk].row_offset;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < n; ++j) prog.add_entry(r0 + i, j, a.A()(i, j));
    prog.add_entry(r0 + i, n, -1.0);
    prog.set_rhs(r0 + i, a.d()(i));
  }
  for (int i = 0; i < m2; ++i) {
    for (int j = 0; j < n; ++j) prog.add_entry(r0 + m1 + i, j, b.A()(i, j));
    prog.add_entry(r0 + m1 + i, n, -1.0);
    prog.set_rhs(r0 + m1 + i, b.d()(i));
  }
  auto sol = solve_conic(prog);
  if (sol.status == SolveStatus::UNBOUNDED) return true;
  if (sol.status != SolveStatus::OPTIMAL)
    throw std::runtime_error("hpolytopes_touch: solve failed");
  return sol.objective_value <= tol;
}

//--------------------------------------------------------------------------
// ConvexPolygon2D
//--------------------------------------------------------------------------

ConvexPolygon2D::ConvexPolygon2D(std::vector<Eigen::Vector2d> vertices)
    : vertices_(std::move(vertices)) {
  const int k = static_cast<int>(vertices_.size());
  if (k < 3) throw std::invalid_argument("polygon: needs at least 3 vertices");
  for (const auto& v : vertices_)
    if (!v.allFinite()) throw std::invalid_argument("polygon: non-finite vertex");
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d e0 = vertices_[(i + 1) % k] - vertices_[i];
    Eigen::Vector2d e1 = vertices_[(i + 2) % k] - vertices_[(i + 1) % k];
    double cross = e0(0) * e1(1) - e0(1) * e1(0);
    if (cross <= 1e-9)
      throw std::invalid_argument(
          "polygon: vertices must be strictly convex in counterclockwise order");
  }
}

namespace {

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
  Eigen::Vector2d ab = b - a;
  double t = ab.squaredNorm() > 0 ? (p - a).dot(ab) / ab.squaredNorm() : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

bool point_in_polygon(const ConvexPolygon2D& poly, const Eigen::Vector2d& p,
                      double margin) {
  if (margin < 0) throw std::invalid_argument("point_in_polygon: negative margin");
  const auto& v = poly.vertices();
  const int k = poly.size();
  bool inside = true;
  for (int i = 0; i < k && inside; ++i) {
    Eigen::Vector2d e = v[(i + 1) % k] - v[i];
    double cross = e(0) * (p(1) - v[i](1)) - e(1) * (p(0) - v[i](0));
    if (cross < 0) inside = false;  // right of a CCW edge
  }
  if (inside) return true;
  if (margin == 0.0) return false;
  double dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i)
    dist = std::min(dist, segment_distance(p, v[i], v[(i + 1) % k]));
  return dist <= margin;
}

//--------------------------------------------------------------------------
// SpaceTimeObstacle
//--------------------------------------------------------------------------

SpaceTimeObstacle::SpaceTimeObstacle(ConvexPolygon2D start, ConvexPolygon2D end,
                                     double t_start, double t_end)
    : start_(std::move(start)), end_(std::move(end)), t_start_(t_start), t_end_(t_end) {
  if (!(t_start < t_end)) throw std::invalid_argument("obstacle: t_start must precede t_end");
  if (!std::isfinite(t_start) || !std::isfinite(t_end))
    throw std::invalid_argument("obstacle: non-finite times");
  if (start_.size() != end_.size())
    throw std::invalid_argument("obstacle: keyframe vertex counts differ");
}

std::vector<Eigen::Vector3d> SpaceTimeObstacle::prism_vertices() const {
  std::vector<Eigen::Vector3d> out;
  out.reserve(2 * start_.size());
  for (const auto& v : start_.vertices()) out.emplace_back(v(0), v(1), t_start_);
  for (const auto& v : end_.vertices()) out.emplace_back(v(0), v(1), t_end_);
  return out;
}

SpaceTimeObstacle extrude_obstacle(const ConvexPolygon2D& start,
                                   const ConvexPolygon2D& end, double t_start,
                                   double t_end) {
  return SpaceTimeObstacle(start, end, t_start, t_end);
}

ConvexPolygon2D obstacle_cross_section(const SpaceTimeObstacle& obs, double t) {
  if (t < obs.t_start() || t > obs.t_end())
    throw std::invalid_argument("cross_section: time outside obstacle lifetime");
  if (t == obs.t_start()) return obs.start_polygon();
  if (t == obs.t_end()) return obs.end_polygon();
  double f = (t - obs.t_start()) / (obs.t_end() - obs.t_start());
  std::vector<Eigen::Vector2d> verts;
  verts.reserve(obs.start_polygon().size());
  const auto& a = obs.start_polygon().vertices();
  const auto& b = obs.end_polygon().vertices();
  for (size_t i = 0; i < a.size(); ++i) verts.push_back((1.0 - f) * a[i] + f * b[i]);
  return ConvexPolygon2D(std::move(verts));
}

//--------------------------------------------------------------------------
// Ellipsoid
//--------------------------------------------------------------------------

Ellipsoid::Ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape)
    : center_(center), shape_(shape) {
  const int d = static_cast<int>(center.size());
  if (shape.rows() != d || shape.cols() != d)
    throw std::invalid_argument("ellipsoid: shape dim mismatch");
  require_finite(center, "ellipsoid");
  require_finite(shape, "ellipsoid");
  if ((shape - shape.transpose()).lpNorm<Eigen::Infinity>() > 1e-9)
    throw std::invalid_argument("ellipsoid: shape not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape);
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw std::invalid_argument("ellipsoid: shape not positive definite");
}

double Ellipsoid::log_det_shape() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape_);
  return es.eigenvalues().array().log().sum();
}

}  // namespace stgcs
