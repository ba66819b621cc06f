#pragma once

#include <Eigen/Dense>
#include <vector>

namespace stgcs {

using Point = Eigen::VectorXd;

enum class PlanMode { STATIC_2D, SPACETIME_3D };

// Halfspace intersection {x : A x <= d}. Rows are unit-normalized at
// construction and the set is certified nonempty with a feasibility solve.
class HPolytope {
 public:
  HPolytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& d);

  static HPolytope from_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  // 2D hull of a vertex list given in counterclockwise order.
  static HPolytope from_vertices_2d(const std::vector<Eigen::Vector2d>& verts);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& d() const { return d_; }
  int dim() const { return static_cast<int>(A_.cols()); }
  int rows() const { return static_cast<int>(A_.rows()); }

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd d_;
};

// Largest ball inside {A x <= d}; radius < 0 certifies emptiness.
struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = 0.0;
  bool bounded_radius = true;  // false when balls of any radius fit
};
ChebyshevBall chebyshev_ball(const Eigen::MatrixXd& A, const Eigen::VectorXd& d);

bool point_in_hpolytope(const HPolytope& p, const Point& x, double tol = 1e-9);

// True iff {A1 x <= d1 + tol} and {A2 x <= d2 + tol} intersect.
bool hpolytopes_touch(const HPolytope& a, const HPolytope& b, double tol = 1e-7);

// Convex polygon, vertices in counterclockwise order, strictly convex.
class ConvexPolygon2D {
 public:
  explicit ConvexPolygon2D(std::vector<Eigen::Vector2d> vertices);

  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }

 private:
  std::vector<Eigen::Vector2d> vertices_;
};

// Distance from the polygon (closed set) is at most `margin`.
bool point_in_polygon(const ConvexPolygon2D& poly, const Eigen::Vector2d& p,
                      double margin = 0.0);

// Convex prism swept between two same-cardinality polygon keyframes over
// [t_start, t_end]; cross-sections interpolate vertexwise.
class SpaceTimeObstacle {
 public:
  SpaceTimeObstacle(ConvexPolygon2D start, ConvexPolygon2D end, double t_start,
                    double t_end);

  const ConvexPolygon2D& start_polygon() const { return start_; }
  const ConvexPolygon2D& end_polygon() const { return end_; }
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }

  // Vertices of both caps lifted to (x, y, t); convex hull is the prism.
  std::vector<Eigen::Vector3d> prism_vertices() const;

 private:
  ConvexPolygon2D start_, end_;
  double t_start_, t_end_;
};

SpaceTimeObstacle extrude_obstacle(const ConvexPolygon2D& start,
                                   const ConvexPolygon2D& end, double t_start,
                                   double t_end);

// Exact keyframe copies at the endpoints, vertexwise interpolation between.
// Throws outside [t_start, t_end].
ConvexPolygon2D obstacle_cross_section(const SpaceTimeObstacle& obs, double t);

// {center + C u : ||u|| <= 1} with C symmetric positive definite.
class Ellipsoid {
 public:
  Ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape);

  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& shape() const { return shape_; }
  int dim() const { return static_cast<int>(center_.size()); }
  double log_det_shape() const;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd shape_;
};

}  // namespace stgcs
