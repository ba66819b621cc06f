#pragma once

// Shared benchmark scenarios used across test binaries.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "stgcs/scenario.hpp"

namespace fixtures {

inline Eigen::VectorXd vecn(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

inline stgcs::HPolytope box2(double x0, double y0, double x1, double y1) {
  Eigen::VectorXd lo(2), hi(2);
  lo << x0, y0;
  hi << x1, y1;
  return stgcs::HPolytope::from_box(lo, hi);
}

inline stgcs::HPolytope box3(double x0, double y0, double x1, double y1, double t0,
                             double t1) {
  Eigen::VectorXd lo(3), hi(3);
  lo << x0, y0, t0;
  hi << x1, y1, t1;
  return stgcs::HPolytope::from_box(lo, hi);
}

inline stgcs::ConvexPolygon2D rect(double x0, double y0, double x1, double y1) {
  return stgcs::ConvexPolygon2D(
      {Eigen::Vector2d(x0, y0), Eigen::Vector2d(x1, y0), Eigen::Vector2d(x1, y1),
       Eigen::Vector2d(x0, y1)});
}

// Unit box, start (0.5, 0) to goal (0.5, 1), one slightly off-center static
// obstacle. Shortest detour passes the obstacle on the right:
// sqrt(0.05) + 0.2 + sqrt(0.37).
inline const double kDetourCost = std::sqrt(0.05) + 0.2 + std::sqrt(0.37);

inline stgcs::Scenario static_detour_scenario(stgcs::PlanMode mode) {
  stgcs::Scenario sc;
  sc.mode = mode;
  sc.bounds_min << 0.0, 0.0;
  sc.bounds_max << 1.0, 1.0;
  sc.t_start = 0.0;
  sc.t_end = 1.0;
  sc.start << 0.5, 0.0;
  sc.goal << 0.5, 1.0;
  sc.v_max = 2.0;
  sc.epsilon = 1e-3;
  sc.obstacles.push_back({rect(0.3, 0.2, 0.6, 0.4), rect(0.3, 0.2, 0.6, 0.4)});
  return sc;
}

// Free space around the static obstacle as four boxes (below, above, right,
// left of it).
inline std::vector<stgcs::HPolytope> static_detour_regions(stgcs::PlanMode mode) {
  if (mode == stgcs::PlanMode::STATIC_2D)
    return {box2(0.0, 0.0, 1.0, 0.2), box2(0.0, 0.4, 1.0, 1.0), box2(0.6, 0.2, 1.0, 0.4),
            box2(0.0, 0.2, 0.3, 0.4)};
  return {box3(0.0, 0.0, 1.0, 0.2, 0.0, 1.0), box3(0.0, 0.4, 1.0, 1.0, 0.0, 1.0),
          box3(0.6, 0.2, 1.0, 0.4, 0.0, 1.0), box3(0.0, 0.2, 0.3, 0.4, 0.0, 1.0)};
}

// Unit box, start (0.5, 0, 0) to goal (0.5, 1, 1), one square obstacle of
// side 0.2 sliding from center (0, 0.5) to (1, 0.5). The agent can keep the
// straight spatial line and retime around the crossing, so the shortest
// spatial length equals |goal - start| = 1.
inline stgcs::Scenario moving_square_scenario() {
  stgcs::Scenario sc;
  sc.mode = stgcs::PlanMode::SPACETIME_3D;
  sc.bounds_min << 0.0, 0.0;
  sc.bounds_max << 1.0, 1.0;
  sc.t_start = 0.0;
  sc.t_end = 1.0;
  sc.start << 0.5, 0.0;
  sc.goal << 0.5, 1.0;
  sc.v_max = 2.0;
  sc.epsilon = 1e-3;
  sc.obstacles.push_back({rect(-0.1, 0.4, 0.1, 0.6), rect(0.9, 0.4, 1.1, 0.6)});
  return sc;
}

// Free space around the sliding square: below and above the y-band it sweeps,
// plus the sheared slabs ahead of (x >= t + 0.1) and behind (x <= t - 0.1)
// the square inside the band.
inline std::vector<stgcs::HPolytope> moving_square_regions() {
  std::vector<stgcs::HPolytope> regions = {box3(0.0, 0.0, 1.0, 0.4, 0.0, 1.0),
                                           box3(0.0, 0.6, 1.0, 1.0, 0.0, 1.0)};
  for (double sign : {1.0, -1.0}) {
    Eigen::MatrixXd A(7, 3);
    Eigen::VectorXd d(7);
    A << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, -sign, 0, sign;
    d << 1, 0, 1, 0, 1, 0, -0.1;
    regions.emplace_back(A, d);
  }
  return regions;
}

// Twenty small squares drifting at constant velocity through the middle band
// of the unit box; deterministic in the seed.
inline stgcs::Scenario cluttered_scenario(unsigned long long seed = 7) {
  stgcs::Scenario sc;
  sc.mode = stgcs::PlanMode::SPACETIME_3D;
  sc.bounds_min << 0.0, 0.0;
  sc.bounds_max << 1.0, 1.0;
  sc.t_start = 0.0;
  sc.t_end = 1.0;
  sc.start << 0.5, 0.0;
  sc.goal << 0.5, 1.0;
  sc.v_max = 3.0;
  sc.epsilon = 1e-3;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.1, 0.9);
  std::uniform_real_distribution<double> uy(0.28, 0.72);
  std::uniform_real_distribution<double> uhalf(0.03, 0.06);
  std::uniform_real_distribution<double> uvel(-0.25, 0.25);
  for (int i = 0; i < 20; ++i) {
    double cx = ux(rng), cy = uy(rng), h = uhalf(rng);
    double vx = uvel(rng), vy = uvel(rng);
    double ex = std::clamp(cx + vx, 0.1, 0.9);
    double ey = std::clamp(cy + vy, 0.28, 0.72);
    sc.obstacles.push_back(
        {rect(cx - h, cy - h, cx + h, cy + h), rect(ex - h, ey - h, ex + h, ey + h)});
  }
  return sc;
}

}  // namespace fixtures
