#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <sstream>

#include "stgcs/conic.hpp"

using namespace stgcs;

namespace {

// min c'x over the unit box [0,1]^2 via NONNEG rows only.
ConicProgram box_lp(const Eigen::Vector2d& c) {
  ConicProgram p(2);
  p.set_objective(0, c(0));
  p.set_objective(1, c(1));
  int b = p.add_block(ConeTag::NONNEG, 4);
  int r0 = p.blocks()[b].row_offset;
  // x <= 1, y <= 1, -x <= 0, -y <= 0
  p.add_entry(r0 + 0, 0, 1.0);
  p.set_rhs(r0 + 0, 1.0);
  p.add_entry(r0 + 1, 1, 1.0);
  p.set_rhs(r0 + 1, 1.0);
  p.add_entry(r0 + 2, 0, -1.0);
  p.add_entry(r0 + 3, 1, -1.0);
  return p;
}

// min ||x - q|| over the unit box; vars (t, x0, x1), minimizes t.
ConicProgram box_projection(const Eigen::Vector2d& q) {
  ConicProgram p(3);
  p.set_objective(0, 1.0);
  int b = p.add_block(ConeTag::NONNEG, 4);
  int r0 = p.blocks()[b].row_offset;
  p.add_entry(r0 + 0, 1, 1.0);
  p.set_rhs(r0 + 0, 1.0);
  p.add_entry(r0 + 1, 2, 1.0);
  p.set_rhs(r0 + 1, 1.0);
  p.add_entry(r0 + 2, 1, -1.0);
  p.add_entry(r0 + 3, 2, -1.0);
  int sb = p.add_block(ConeTag::SOC, 3);
  int s0 = p.blocks()[sb].row_offset;
  // s = (t, x - q) in SOC
  p.add_entry(s0 + 0, 0, -1.0);
  p.add_entry(s0 + 1, 1, -1.0);
  p.set_rhs(s0 + 1, -q(0));
  p.add_entry(s0 + 2, 2, -1.0);
  p.set_rhs(s0 + 2, -q(1));
  return p;
}

}  // namespace

TEST_CASE("lp single bound") {
  // min x s.t. x >= 1
  ConicProgram p(1);
  p.set_objective(0, 1.0);
  int b = p.add_block(ConeTag::NONNEG, 1);
  p.add_entry(p.blocks()[b].row_offset, 0, -1.0);
  p.set_rhs(p.blocks()[b].row_offset, -1.0);
  auto sol = solve_conic(p);
  REQUIRE(sol.status == SolveStatus::OPTIMAL);
  CHECK(sol.primal(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.objective_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("socp fixed norm") {
  // min t s.t. ||(3,4)|| <= t
  ConicProgram p(1);
  p.set_objective(0, 1.0);
  int b = p.add_block(ConeTag::SOC, 3);
  int r0 = p.blocks()[b].row_offset;
  p.add_entry(r0, 0, -1.0);
  p.set_rhs(r0 + 1, 3.0);
  p.set_rhs(r0 + 2, 4.0);
  auto sol = solve_conic(p);
  REQUIRE(sol.status == SolveStatus::OPTIMAL);
  CHECK(sol.primal(0) == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("infeasible bounds") {
  // x >= 1 and -x >= 0
  ConicProgram p(1);
  int b = p.add_block(ConeTag::NONNEG, 2);
  int r0 = p.blocks()[b].row_offset;
  p.add_entry(r0 + 0, 0, -1.0);
  p.set_rhs(r0 + 0, -1.0);
  p.add_entry(r0 + 1, 0, 1.0);
  p.set_rhs(r0 + 1, 0.0);
  auto sol = solve_conic(p);
  CHECK(sol.status == SolveStatus::INFEASIBLE);
}

TEST_CASE("unbounded objective") {
  // min x s.t. x <= 0
  ConicProgram p(1);
  p.set_objective(0, 1.0);
  int b = p.add_block(ConeTag::NONNEG, 1);
  p.add_entry(p.blocks()[b].row_offset, 0, 1.0);
  auto sol = solve_conic(p);
  CHECK(sol.status == SolveStatus::UNBOUNDED);
}

TEST_CASE("equality rows") {
  // min x + y s.t. x + y = 2, x >= 0, y >= 0
  ConicProgram p(2);
  p.set_objective(0, 1.0);
  p.set_objective(1, 1.0);
  int e = p.add_block(ConeTag::ZERO, 1);
  int r0 = p.blocks()[e].row_offset;
  p.add_entry(r0, 0, 1.0);
  p.add_entry(r0, 1, 1.0);
  p.set_rhs(r0, 2.0);
  int b = p.add_block(ConeTag::NONNEG, 2);
  r0 = p.blocks()[b].row_offset;
  p.add_entry(r0 + 0, 0, -1.0);
  p.add_entry(r0 + 1, 1, -1.0);
  auto sol = solve_conic(p);
  REQUIRE(sol.status == SolveStatus::OPTIMAL);
  CHECK(sol.objective_value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(sol.primal(0) + sol.primal(1) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("box lp matches vertex enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  const Eigen::Vector2d corners[4] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Vector2d c(coeff(rng), coeff(rng));
    auto sol = solve_conic(box_lp(c));
    REQUIRE(sol.status == SolveStatus::OPTIMAL);
    double best = 1e100;
    for (const auto& v : corners) best = std::min(best, c.dot(v));
    CHECK(sol.objective_value == doctest::Approx(best).epsilon(1e-7));
  }
}

TEST_CASE("box projection matches coordinate clamp") {
  // hand value: q=(2,-3) clamps to (1,0), distance sqrt(10)
  auto sol = solve_conic(box_projection({2.0, -3.0}));
  REQUIRE(sol.status == SolveStatus::OPTIMAL);
  CHECK(sol.objective_value == doctest::Approx(3.16227766016838).epsilon(1e-7));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Vector2d q(pos(rng), pos(rng));
    auto s = solve_conic(box_projection(q));
    REQUIRE(s.status == SolveStatus::OPTIMAL);
    Eigen::Vector2d clamped(std::clamp(q(0), 0.0, 1.0), std::clamp(q(1), 0.0, 1.0));
    CHECK(s.objective_value == doctest::Approx((clamped - q).norm()).epsilon(1e-6));
    // weakly determined coordinates carry sqrt(gap)-level error
    CHECK(std::abs(s.primal(1) - clamped(0)) < 2e-4);
    CHECK(std::abs(s.primal(2) - clamped(1)) < 2e-4);
  }
}

TEST_CASE("solution satisfies constraints at tolerance") {
  auto p = box_projection({0.5, 2.5});
  auto sol = solve_conic(p);
  REQUIRE(sol.status == SolveStatus::OPTIMAL);
  // rebuild rows and check every block within 10x feasibility tolerance
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(p.num_rows(), p.num_vars());
  for (const auto& t : p.entries()) G(t.row(), t.col()) += t.value();
  Eigen::VectorXd slack = p.rhs() - G * sol.primal;
  for (const auto& blk : p.blocks()) {
    auto s = slack.segment(blk.row_offset, blk.rows);
    if (blk.cone == ConeTag::ZERO) {
      CHECK(s.lpNorm<Eigen::Infinity>() <= 1e-7);
    } else if (blk.cone == ConeTag::NONNEG) {
      CHECK(s.minCoeff() >= -1e-7);
    } else {
      CHECK(s(0) + 1e-7 >= s.tail(blk.rows - 1).norm());
    }
  }
}

TEST_CASE("objective scaling keeps argmin") {
  auto p1 = box_projection({0.3, 0.9});
  auto s1 = solve_conic(p1);
  auto p2 = box_projection({0.3, 0.9});
  p2.set_objective(0, 5.0);
  auto s2 = solve_conic(p2);
  REQUIRE(s1.status == SolveStatus::OPTIMAL);
  REQUIRE(s2.status == SolveStatus::OPTIMAL);
  CHECK(std::abs(s1.primal(1) - s2.primal(1)) < 1e-6);
  CHECK(std::abs(s1.primal(2) - s2.primal(2)) < 1e-6);
  CHECK(s2.objective_value == doctest::Approx(5.0 * s1.objective_value).epsilon(1e-6));
}

TEST_CASE("objective value consistent with primal") {
  auto p = box_lp({0.7, -1.3});
  auto sol = solve_conic(p);
  REQUIRE(sol.status == SolveStatus::OPTIMAL);
  CHECK(sol.objective_value ==
        doctest::Approx(p.objective().dot(sol.primal)).epsilon(1e-8));
}

TEST_CASE("dump lists nonzeros by block") {
  ConicProgram p(2);
  p.set_objective(1, 2.0);
  int e = p.add_block(ConeTag::ZERO, 1);
  p.add_entry(p.blocks()[e].row_offset, 0, 1.0);
  p.set_rhs(p.blocks()[e].row_offset, 3.0);
  int b = p.add_block(ConeTag::NONNEG, 1);
  p.add_entry(p.blocks()[b].row_offset, 1, -1.0);
  std::ostringstream os;
  p.dump(os);
  auto text = os.str();
  CHECK(text.find("vars 2") != std::string::npos);
  CHECK(text.find("objective 1 2") != std::string::npos);
  CHECK(text.find("block 0 ZERO 1") != std::string::npos);
  CHECK(text.find("block 1 NONNEG 1") != std::string::npos);
  CHECK(text.find("entry 0 0 0 1") != std::string::npos);
  CHECK(text.find("entry 1 0 1 -1") != std::string::npos);
  CHECK(text.find("rhs 0 0 3") != std::string::npos);
}

TEST_CASE("deterministic across repeat solves") {
  auto a = solve_conic(box_projection({1.7, 0.2}));
  auto b = solve_conic(box_projection({1.7, 0.2}));
  REQUIRE(a.status == SolveStatus::OPTIMAL);
  REQUIRE(b.status == SolveStatus::OPTIMAL);
  CHECK(a.primal == b.primal);
  CHECK(a.iterations == b.iterations);
}
