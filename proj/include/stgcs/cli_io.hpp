#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stgcs/scenario.hpp"
#include "stgcs/solver.hpp"
#include "stgcs/validation.hpp"

namespace stgcs {

// Scenario file or schema problem; the message names the offending field.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses and checks a scenario file. Defaults are filled in, unknown keys
// rejected, and semantic invariants enforced. Soft problems (a horizon too
// short to reach the goal at v_max) land in `warnings` when given.
Scenario load_scenario(const std::string& path,
                       std::vector<std::string>* warnings = nullptr);
Scenario parse_scenario(const std::string& json_text,
                        std::vector<std::string>* warnings = nullptr);

// Normal-form serialization; load_scenario(save) reproduces every field.
std::string scenario_to_json(const Scenario& sc);

// Everything needed to re-validate or re-render a stored solution.
struct StoredSolution {
  Scenario scenario;
  std::vector<HPolytope> regions;
  std::vector<int> path;
  std::vector<BezierSegment> segments;
  double cost = 0.0;
  double lower_bound = 0.0;
  SolveStats stats;
  ValidationReport report;
};

StoredSolution load_solution(const std::string& path);

// Writes trajectory.csv, solution.json, and plot.svg into out_dir.
void write_outputs(const Scenario& sc, const std::vector<HPolytope>& regions,
                   const Solution& sol, const ValidationReport& report,
                   const std::string& out_dir);

// Top-down figure: region shadows, obstacle caps (or one cross-section),
// and the trajectory polyline.
std::string render_svg(const Scenario& sc, const std::vector<HPolytope>& regions,
                       const std::vector<BezierSegment>& segments,
                       std::optional<double> cross_section = std::nullopt);

// Command-line driver: plan, validate, sweep, render, dump-scenario.
// Returns 0 on success, 1 on usage or file errors, 2 when planning proves
// the scenario infeasible.
int run_cli(const std::vector<std::string>& args);

}  // namespace stgcs
