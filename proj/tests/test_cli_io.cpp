#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "stgcs/cli_io.hpp"

using namespace stgcs;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

fs::path scratch(const char* name) {
  fs::path dir = fs::temp_directory_path() / "stgcs_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_temp(const fs::path& dir, const char* name, const std::string& text) {
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

size_t count_of(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++n;
  return n;
}

Solution solve_moving_square() {
  Scenario sc = moving_square_scenario();
  GcsGraph g = build_graph(moving_square_regions());
  Terminals t = locate_terminals(g, lift_start(sc), lift_goal(sc));
  return solve_gcs(g, t, scenario_params(sc), sc.solver);
}

nlohmann::json load_without_times(const fs::path& p) {
  nlohmann::json j = nlohmann::json::parse(slurp(p));
  j["stats"].erase("times");
  return j;
}

}  // namespace

TEST_CASE("scenario file parsing matches the benchmark parameters") {
  Scenario sc = load_scenario(fixture("detour_spacetime.json"));
  CHECK(sc.mode == PlanMode::SPACETIME_3D);
  CHECK(sc.v_max == 2.0);
  CHECK(sc.epsilon == 0.001);
  CHECK(sc.spline_order == 3);
  REQUIRE(sc.obstacles.size() == 1);
  CHECK(sc.obstacles[0].start_shape.size() == 4);
  CHECK(sc.bounds_min == Eigen::Vector2d(0, 0));
  CHECK(sc.bounds_max == Eigen::Vector2d(1, 1));
  CHECK(sc.t_start == 0.0);
  CHECK(sc.t_end == 1.0);
  CHECK(sc.start == Eigen::Vector2d(0.5, 0.0));
  CHECK(sc.goal == Eigen::Vector2d(0.5, 1.0));
  CHECK(sc.iris_samples == 40);
  CHECK(sc.iris_seed == 0);
}

TEST_CASE("spacetime scenario without v_max is rejected") {
  std::string text = R"({"mode": "spacetime", "bounds": {"min": [0,0], "max": [1,1]},
                         "time": {"start": 0, "end": 1}, "start": [0.1,0.1], "goal": [0.9,0.9]})";
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       "scenario: missing required field 'v_max'", ScenarioError);
}

TEST_CASE("static scenario with moving keyframes is rejected") {
  std::string text = R"({"mode": "static", "bounds": {"min": [0,0], "max": [1,1]},
                         "start": [0.1,0.1], "goal": [0.9,0.9],
                         "obstacles": [{"vertices_start": [[0.4,0.4],[0.6,0.4],[0.6,0.6],[0.4,0.6]],
                                        "vertices_end": [[0.5,0.4],[0.7,0.4],[0.7,0.6],[0.5,0.6]]}]})";
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       "scenario: obstacles[0] keyframes must be identical in static mode",
                       ScenarioError);
}

TEST_CASE("unknown keys are rejected at every level") {
  std::string top = R"({"mode": "static", "bounds": {"min": [0,0], "max": [1,1]},
                        "start": [0.1,0.1], "goal": [0.9,0.9], "speed": 3})";
  CHECK_THROWS_WITH_AS(parse_scenario(top), "scenario: unknown key 'speed' in top level",
                       ScenarioError);
  std::string nested = R"({"mode": "static", "bounds": {"min": [0,0], "max": [1,1]},
                           "start": [0.1,0.1], "goal": [0.9,0.9], "iris": {"foo": 1}})";
  CHECK_THROWS_WITH_AS(parse_scenario(nested), "scenario: unknown key 'foo' in iris",
                       ScenarioError);
}

TEST_CASE("omitted fields fall back to the documented defaults") {
  std::string text = R"({"mode": "static", "bounds": {"min": [0,0], "max": [1,1]},
                         "start": [0.1,0.1], "goal": [0.9,0.9]})";
  Scenario sc = parse_scenario(text);
  CHECK(sc.epsilon == 1e-3);
  CHECK(sc.spline_order == 3);
  CHECK(sc.iris.max_iterations == 10);
  CHECK(sc.iris_samples == 100);
  CHECK(sc.t_start == 0.0);
  CHECK(sc.t_end == 1.0);
  CHECK(sc.v_max == 0.0);
  CHECK(sc.solver.gap_tol == 1e-6);
  CHECK(sc.obstacles.empty());
}

TEST_CASE("malformed json reports the offending line") {
  std::string text = "{\n  \"mode\": \"static\",\n  oops\n}";
  try {
    parse_scenario(text);
    FAIL("expected a parse error");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("scenario serialization round-trips every fixture") {
  for (const char* name :
       {"detour_spacetime.json", "detour_static.json", "moving_square.json",
        "cluttered.json"}) {
    CAPTURE(name);
    Scenario a = load_scenario(fixture(name));
    std::string s1 = scenario_to_json(a);
    Scenario b = parse_scenario(s1);
    CHECK(scenario_to_json(b) == s1);
    CHECK(b.obstacles.size() == a.obstacles.size());
    CHECK(b.v_max == a.v_max);
    CHECK(b.iris_seed == a.iris_seed);
  }
}

TEST_CASE("outputs land on disk with the documented shapes") {
  Scenario sc = moving_square_scenario();
  auto regions = moving_square_regions();
  Solution sol = solve_moving_square();
  ValidationReport rep = validate_solution(sol.trajectory, sc);
  fs::path dir = scratch("outputs");
  write_outputs(sc, regions, sol, rep, dir.string());

  std::string csv = slurp(dir / "trajectory.csv");
  CHECK(count_of(csv, "\n") == 1002);
  CHECK(csv.rfind("t,x,y\n", 0) == 0);

  StoredSolution stored = load_solution((dir / "solution.json").string());
  CHECK(stored.cost == sol.cost);
  CHECK(stored.lower_bound == sol.lower_bound);
  CHECK(stored.path == sol.path);
  REQUIRE(stored.segments.size() == sol.trajectory.segments().size());
  for (size_t i = 0; i < stored.segments.size(); ++i) {
    const auto& a = stored.segments[i].control;
    const auto& b = sol.trajectory.segments()[i].control;
    REQUIRE(a.size() == b.size());
    for (size_t k = 0; k < a.size(); ++k)
      CHECK((a[k] - b[k]).cwiseAbs().maxCoeff() == 0.0);  // bit-identical round trip
  }
  CHECK(stored.report.passed == rep.passed);
  CHECK(stored.stats.nodes_explored == sol.stats.nodes_explored);
  CHECK(stored.regions.size() == regions.size());

  std::string svg = slurp(dir / "plot.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // one compound path per obstacle plus one for the trajectory
  CHECK(count_of(svg, "<path ") == sc.obstacles.size() + 1);
  CHECK(count_of(svg, "<polygon ") == regions.size());
}

TEST_CASE("plan subcommand runs the full pipeline deterministically") {
  fs::path a = scratch("plan_a"), b = scratch("plan_b");
  std::vector<std::string> args = {"plan",  "--scenario", fixture("detour_spacetime.json"),
                                   "--out", a.string(),   "--samples",
                                   "25",    "--seed",     "1"};
  CHECK(run_cli(args) == 0);
  args[4] = b.string();
  CHECK(run_cli(args) == 0);

  StoredSolution stored = load_solution((a / "solution.json").string());
  CHECK(stored.report.passed);
  CHECK(stored.cost >= kDetourCost - 1e-3);  // regions under-approximate free space
  CHECK(stored.cost <= 1.3);
  CHECK(stored.scenario.iris_samples == 25);  // override recorded

  CHECK(load_without_times(a / "solution.json") == load_without_times(b / "solution.json"));
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

TEST_CASE("plan maps failure classes to exit codes") {
  fs::path dir = scratch("plan_fail");
  CHECK(run_cli({"plan", "--scenario", (dir / "missing.json").string(), "--out",
                 dir.string()}) == 1);
  CHECK(run_cli({"plan", "--bogus-flag"}) == 1);
  CHECK(run_cli({"definitely-not-a-command"}) == 1);
  CHECK(run_cli({}) == 1);

  // horizon too tight for any detour around the obstacle
  Scenario sc = load_scenario(fixture("detour_spacetime.json"));
  sc.v_max = 1.001;
  fs::path tight = write_temp(dir, "tight.json", scenario_to_json(sc));
  CHECK(run_cli({"plan", "--scenario", tight.string(), "--out", dir.string()}) == 2);
}

TEST_CASE("dump-scenario emits a stable normal form") {
  fs::path dir = scratch("dump");
  fs::path f1 = dir / "one.json", f2 = dir / "two.json";
  CHECK(run_cli({"dump-scenario", "--scenario", fixture("detour_static.json"), "--out",
                 f1.string()}) == 0);
  CHECK(run_cli({"dump-scenario", "--scenario", f1.string(), "--out", f2.string()}) == 0);
  CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("sweep tabulates means per sample count") {
  fs::path dir = scratch("sweep");
  fs::path csv = dir / "sweep.csv";
  CHECK(run_cli({"sweep", "--scenario", fixture("moving_square.json"), "--samples", "6,12",
                 "--repeats", "1", "--out", csv.string()}) == 0);
  std::string text = slurp(csv);
  CHECK(count_of(text, "\n") == 3);
  CHECK(text.rfind("samples,sets,edges,cost,time\n", 0) == 0);
  std::istringstream rows(text);
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  CHECK(line.rfind("6,", 0) == 0);
  std::getline(rows, line);
  CHECK(line.rfind("12,", 0) == 0);
}

TEST_CASE("render draws stored solutions with optional cross-sections") {
  Scenario sc = moving_square_scenario();
  auto regions = moving_square_regions();
  Solution sol = solve_moving_square();
  ValidationReport rep = validate_solution(sol.trajectory, sc);
  fs::path dir = scratch("render");
  write_outputs(sc, regions, sol, rep, dir.string());

  fs::path both = dir / "both.svg", snap = dir / "snap.svg";
  CHECK(run_cli({"render", "--solution", (dir / "solution.json").string(), "--out",
                 both.string()}) == 0);
  CHECK(run_cli({"render", "--solution", (dir / "solution.json").string(), "--out",
                 snap.string(), "--cross-section", "0.5"}) == 0);
  std::string both_svg = slurp(both), snap_svg = slurp(snap);
  CHECK(count_of(both_svg, "<path ") == 2);
  CHECK(count_of(snap_svg, "<path ") == 2);
  // both caps trace two closed loops; a snapshot traces one
  CHECK(count_of(both_svg, "Z") > count_of(snap_svg, "Z"));
}

TEST_CASE("validate subcommand re-checks stored solutions") {
  Scenario sc = moving_square_scenario();
  auto regions = moving_square_regions();
  Solution sol = solve_moving_square();
  ValidationReport rep = validate_solution(sol.trajectory, sc);
  fs::path dir = scratch("validate");
  write_outputs(sc, regions, sol, rep, dir.string());

  CHECK(run_cli({"validate", "--solution", (dir / "solution.json").string(), "--scenario",
                 fixture("moving_square.json")}) == 0);
  // a static scenario cannot certify a spacetime solution
  CHECK(run_cli({"validate", "--solution", (dir / "solution.json").string(), "--scenario",
                 fixture("detour_static.json")}) == 1);
}
