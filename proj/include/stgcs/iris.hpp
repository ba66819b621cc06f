#pragma once

#include <stdexcept>
#include <vector>

#include "stgcs/geometry.hpp"

namespace stgcs {

// Planning workspace: axis-aligned bounds plus convex obstacles. In
// spacetime mode the bounds box and obstacle prisms carry a trailing time
// coordinate.
struct Environment {
  HPolytope bounds;
  std::vector<SpaceTimeObstacle> obstacles;
  PlanMode mode;

  int dim() const { return bounds.dim(); }
  // Obstacle i as a vertex list in the workspace dimension.
  std::vector<Eigen::VectorXd> obstacle_vertices(int i) const;
  // Closed-set collision test with inflation margin.
  bool point_in_obstacle(int i, const Eigen::VectorXd& p, double margin = 0.0) const;
  bool point_in_any_obstacle(const Eigen::VectorXd& p, double margin = 0.0) const;
};

struct IrisParams {
  int max_iterations = 10;
  double termination_growth = 0.02;  // stop below this relative volume gain
  double boundary_tol = 1e-9;        // seed containment margin for cut planes
  double seed_rejection_tol = 1e-9;  // obstacle inflation when vetting seeds
};

struct SeedRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximum-volume inscribed ellipsoid of a bounded polytope, via damped
// Newton ascent on the log-det barrier objective (falls back to the
// Chebyshev ball if the ascent stalls). Throws on unbounded input.
Ellipsoid inscribed_ellipsoid(const HPolytope& p);

// Hyperplane through the closest hull point to the ellipsoid in its metric;
// the hull lies in {x : a'x >= b}, the ellipsoid center in {a'x < b}.
// a is unit length. Throws if the center is inside the hull.
std::pair<Eigen::VectorXd, double> separating_hyperplane(
    const Ellipsoid& e, const std::vector<Eigen::VectorXd>& obstacle_vertices);

struct IrisDebug {
  std::vector<double> log_det_per_iteration;
};

// Grows a collision-free polytope around the seed, treating previously
// committed regions as obstacles so regions never overlap.
HPolytope inflate_region(const Eigen::VectorXd& seed, const Environment& env,
                         const std::vector<HPolytope>& existing,
                         const IrisParams& params = IrisParams(),
                         IrisDebug* debug = nullptr);

// Seeds regions at start and goal, then at uniform rejection samples from
// the given generator seed. Deterministic for fixed inputs.
std::vector<HPolytope> generate_regions(const Environment& env,
                                        const Eigen::VectorXd& start,
                                        const Eigen::VectorXd& goal, int n_samples,
                                        unsigned long long rng_seed,
                                        const IrisParams& params = IrisParams());

}  // namespace stgcs
