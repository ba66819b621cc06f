#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stgcs/spline.hpp"

using namespace stgcs;

namespace {

Point pt2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

Point pt3(double x, double y, double t) {
  Point p(3);
  p << x, y, t;
  return p;
}

BezierSegment quadratic_arch() {
  return BezierSegment({pt2(0, 0), pt2(1, 1), pt2(2, 0)});
}

}  // namespace

TEST_CASE("eval hits endpoints and quadratic midpoint") {
  auto seg = quadratic_arch();
  CHECK((bezier_eval(seg, 0.0) - pt2(0, 0)).norm() == 0.0);
  CHECK((bezier_eval(seg, 1.0) - pt2(2, 0)).norm() == 0.0);
  // hand Bernstein at s=0.5: 0.25*(0,0) + 0.5*(1,1) + 0.25*(2,0) = (1, 0.5)
  CHECK((bezier_eval(seg, 0.5) - pt2(1.0, 0.5)).norm() < 1e-15);
  CHECK_THROWS_AS(bezier_eval(seg, 1.5), std::invalid_argument);
}

TEST_CASE("derivative control points") {
  auto d = bezier_derivative(quadratic_arch());
  REQUIRE(d.control.size() == 2);
  CHECK((d.control[0] - pt2(2, 2)).norm() == 0.0);
  CHECK((d.control[1] - pt2(2, -2)).norm() == 0.0);
  // derivative at midpoint of the arch is horizontal
  CHECK((bezier_eval(d, 0.5) - pt2(2, 0)).norm() < 1e-15);
}

TEST_CASE("derivative of collinear control stays collinear") {
  BezierSegment line({pt2(0, 0), pt2(0.4, 0.8), pt2(0.7, 1.4), pt2(1, 2)});
  auto d = bezier_derivative(line);
  for (const auto& c : d.control) {
    double cross = c(0) * 2.0 - c(1) * 1.0;  // direction (1,2)
    CHECK(std::abs(cross) < 1e-12);
  }
}

TEST_CASE("convex hull property via support functions") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> ctrl;
    for (int k = 0; k < 4; ++k) ctrl.push_back(pt2(coord(rng), coord(rng)));
    BezierSegment seg(ctrl);
    for (int dir = 0; dir < 32; ++dir) {
      double ang = 2.0 * M_PI * dir / 32;
      Eigen::Vector2d u(std::cos(ang), std::sin(ang));
      double support = -1e100;
      for (const auto& c : ctrl) support = std::max(support, u.dot(c));
      for (int i = 0; i <= 100; ++i) {
        Point p = bezier_eval(seg, i / 100.0);
        CHECK(u.dot(p) <= support + 1e-7);
      }
    }
  }
}

TEST_CASE("arc length bounds bracket the true length") {
  auto seg = quadratic_arch();
  auto bounds = arc_length_bounds(seg, 4096);
  // control polygon: sqrt(2) + sqrt(2)
  CHECK(bounds.upper == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  // closed form for this parabola: sqrt(2) + asinh(1)
  const double truth = std::sqrt(2.0) + std::asinh(1.0);
  CHECK(bounds.lower <= truth + 1e-9);
  CHECK(bounds.lower == doctest::Approx(truth).epsilon(1e-5));
  CHECK(bounds.lower <= bounds.upper);
  // refinement only tightens the lower bound
  CHECK(arc_length_bounds(seg, 64).lower <= bounds.lower + 1e-12);
}

TEST_CASE("arc length bounds on random segments") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> ctrl;
    for (int k = 0; k < 4; ++k) ctrl.push_back(pt2(coord(rng), coord(rng)));
    auto b = arc_length_bounds(BezierSegment(ctrl), 512);
    CHECK(b.lower <= b.upper + 1e-12);
    double chord = (ctrl.back() - ctrl.front()).norm();
    CHECK(b.lower >= chord - 1e-9);
  }
}

TEST_CASE("trajectory junction and time validation") {
  BezierSegment a({pt3(0, 0, 0), pt3(0, 0.3, 0.3), pt3(0, 0.5, 0.5)});
  BezierSegment b({pt3(0, 0.5, 0.5), pt3(0, 0.8, 0.8), pt3(0, 1, 1)});
  CHECK_NOTHROW(Trajectory({a, b}, PlanMode::SPACETIME_3D));

  BezierSegment gap({pt3(0, 0.501, 0.5), pt3(0, 0.8, 0.8), pt3(0, 1, 1)});
  CHECK_THROWS_AS(Trajectory({a, gap}, PlanMode::SPACETIME_3D), std::invalid_argument);

  BezierSegment back({pt3(0, 0.5, 0.5), pt3(0, 0.8, 0.4), pt3(0, 1, 1)});
  CHECK_THROWS_AS(Trajectory({a, back}, PlanMode::SPACETIME_3D), std::invalid_argument);

  // 2D trajectories skip the time checks
  BezierSegment flat({pt2(0, 0), pt2(1, 0)});
  CHECK_NOTHROW(Trajectory({flat}, PlanMode::STATIC_2D));
}

TEST_CASE("position at time inverts the time component") {
  // control times (0, 1/3, 2/3, 1) make t(s) = s exactly
  BezierSegment seg({pt3(0.5, 0, 0), pt3(0.5, 1.0 / 3, 1.0 / 3),
                     pt3(0.5, 2.0 / 3, 2.0 / 3), pt3(0.5, 1, 1)});
  Trajectory traj({seg}, PlanMode::SPACETIME_3D);
  CHECK((position_at_time(traj, 0.0) - Eigen::Vector2d(0.5, 0)).norm() < 1e-9);
  CHECK((position_at_time(traj, 1.0) - Eigen::Vector2d(0.5, 1)).norm() < 1e-9);
  CHECK((position_at_time(traj, 0.25) - Eigen::Vector2d(0.5, 0.25)).norm() < 1e-8);

  // oracle: dense scan over s for a segment with uneven time profile
  BezierSegment warp({pt3(0, 0, 0), pt3(0.6, 0.1, 0.1), pt3(0.8, 0.9, 0.9), pt3(1, 1, 1)});
  Trajectory wtraj({warp}, PlanMode::SPACETIME_3D);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    double t = time(rng);
    Eigen::Vector2d got = position_at_time(wtraj, t);
    // oracle: find s with matching time by fine linear scan
    double best_s = 0.0, best_err = 1e100;
    for (int i = 0; i <= 200000; ++i) {
      double s = i / 200000.0;
      double err = std::abs(bezier_eval(warp, s)(2) - t);
      if (err < best_err) {
        best_err = err;
        best_s = s;
      }
    }
    Eigen::Vector2d want = bezier_eval(warp, best_s).head<2>();
    CHECK((got - want).norm() < 1e-4);
  }
  CHECK_THROWS_AS(position_at_time(wtraj, 1.5), std::invalid_argument);
}

TEST_CASE("spatial projection strips time") {
  BezierSegment seg({pt3(0, 0, 0), pt3(1, 2, 0.5), pt3(2, 0, 1)});
  auto flat = spatial_projection(seg, PlanMode::SPACETIME_3D);
  CHECK(flat.dim() == 2);
  CHECK((flat.control[1] - pt2(1, 2)).norm() == 0.0);
  auto same = spatial_projection(flat, PlanMode::STATIC_2D);
  CHECK(same.dim() == 2);
}
