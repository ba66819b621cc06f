#include "stgcs/cli_io.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "stgcs/gcs_graph.hpp"
#include "stgcs/iris.hpp"

namespace stgcs {

using nlohmann::json;

namespace {

//--------------------------------------------------------------------------
// Strict JSON helpers
//--------------------------------------------------------------------------

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) known = true;
    if (!known)
      throw ScenarioError("scenario: unknown key '" + item.key() + "' in " + where);
  }
}

const json& require_field(const json& obj, const std::string& where, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw ScenarioError("scenario: missing required field '" + where + field + "'");
  return *it;
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number())
    throw ScenarioError("scenario: field '" + field + "' must be a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer())
    throw ScenarioError("scenario: field '" + field + "' must be an integer");
  return v.get<long long>();
}

Eigen::Vector2d as_point(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2)
    throw ScenarioError("scenario: field '" + field + "' must be a 2-element array");
  return Eigen::Vector2d(as_number(v[0], field), as_number(v[1], field));
}

ConvexPolygon2D as_polygon(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() < 3)
    throw ScenarioError("scenario: field '" + field +
                        "' must be an array of at least 3 vertices");
  std::vector<Eigen::Vector2d> verts;
  for (size_t i = 0; i < v.size(); ++i)
    verts.push_back(as_point(v[i], field + "[" + std::to_string(i) + "]"));
  try {
    return ConvexPolygon2D(verts);
  } catch (const std::exception& e) {
    throw ScenarioError("scenario: field '" + field + "': " + e.what());
  }
}

json point_to_json(const Eigen::Vector2d& p) { return json::array({p(0), p(1)}); }

json polygon_to_json(const ConvexPolygon2D& poly) {
  json arr = json::array();
  for (const auto& v : poly.vertices()) arr.push_back(point_to_json(v));
  return arr;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(std::string(what) + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t upto = std::min<size_t>(e.byte, text.size());
    long line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ScenarioError(std::string(what) + ": parse error at line " +
                        std::to_string(line) + ": " + e.what());
  }
}

//--------------------------------------------------------------------------
// Polytope shadows for rendering
//--------------------------------------------------------------------------

bool shadow_accepts(const HPolytope& p, const Eigen::VectorXd& x) {
  return ((p.A() * x - p.d()).array() <= 1e-8).all();
}

// CCW hull by monotone chain; tolerates duplicates and collinear points.
std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return (a - b).norm() <= 1e-9;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i > 0; --i) {
    const auto& p = pts[i - 1];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

// xy shadow of a 2D or 3D polytope via brute-force vertex enumeration.
std::vector<Eigen::Vector2d> polytope_shadow(const HPolytope& p) {
  std::vector<Eigen::Vector2d> pts;
  const int m = p.rows();
  auto push = [&](const Eigen::VectorXd& x) {
    if (shadow_accepts(p, x)) pts.push_back(x.head<2>());
  };
  if (p.dim() == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        Eigen::Matrix2d M;
        M.row(0) = p.A().row(i);
        M.row(1) = p.A().row(j);
        if (std::abs(M.determinant()) < 1e-10) continue;
        push(M.inverse() * Eigen::Vector2d(p.d()(i), p.d()(j)));
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          Eigen::Matrix3d M;
          M.row(0) = p.A().row(i);
          M.row(1) = p.A().row(j);
          M.row(2) = p.A().row(k);
          if (std::abs(M.determinant()) < 1e-10) continue;
          push(M.inverse() * Eigen::Vector3d(p.d()(i), p.d()(j), p.d()(k)));
        }
  }
  return convex_hull_2d(std::move(pts));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

//--------------------------------------------------------------------------
// Solution serialization
//--------------------------------------------------------------------------

json stats_to_json(const SolveStats& s) {
  json j;
  j["nodes_explored"] = s.nodes_explored;
  j["relaxations_solved"] = s.relaxations_solved;
  j["root_relaxation_cost"] =
      std::isfinite(s.root_relaxation_cost) ? json(s.root_relaxation_cost) : json();
  j["node_limit_hit"] = s.node_limit_hit;
  j["inexact"] = s.inexact;
  j["times"] = {{"relaxation", s.time_relaxation},
                {"restriction", s.time_restriction},
                {"total", s.time_total}};
  return j;
}

json report_to_json(const ValidationReport& r) {
  json events = json::array();
  for (const auto& ev : r.collision_events)
    events.push_back(
        {{"t", ev.t}, {"point", point_to_json(ev.point)}, {"obstacle", ev.obstacle}});
  json j;
  j["passed"] = r.passed;
  j["collision_events"] = events;
  j["max_speed"] = r.max_speed;
  j["max_junction_continuity_residual"] = r.max_junction_continuity_residual;
  j["max_junction_diff_residual"] = r.max_junction_diff_residual;
  j["terminal_errors"] = json::array({r.terminal_errors(0), r.terminal_errors(1)});
  j["time_monotone"] = r.time_monotone;
  return j;
}

json region_to_json(const HPolytope& p) {
  json A = json::array();
  for (int i = 0; i < p.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < p.dim(); ++j) row.push_back(p.A()(i, j));
    A.push_back(row);
  }
  json d = json::array();
  for (int i = 0; i < p.rows(); ++i) d.push_back(p.d()(i));
  return {{"A", A}, {"d", d}};
}

HPolytope region_from_json(const json& j) {
  const json& A = require_field(j, "regions[].", "A");
  const json& d = require_field(j, "regions[].", "d");
  int rows = static_cast<int>(A.size());
  if (rows == 0) throw ScenarioError("solution: empty region matrix");
  int cols = static_cast<int>(A[0].size());
  Eigen::MatrixXd Am(rows, cols);
  Eigen::VectorXd dv(rows);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < cols; ++c) Am(i, c) = A[i][c].get<double>();
    dv(i) = d[i].get<double>();
  }
  return HPolytope(Am, dv);
}

}  // namespace

//--------------------------------------------------------------------------
// Scenario parsing
//--------------------------------------------------------------------------

Scenario parse_scenario(const std::string& text, std::vector<std::string>* warnings) {
  json j = parse_json_text(text, "scenario");
  if (!j.is_object()) throw ScenarioError("scenario: top level must be an object");
  reject_unknown_keys(j, "top level",
                      {"mode", "bounds", "time", "start", "goal", "v_max", "epsilon",
                       "spline_order", "obstacles", "iris", "solver"});

  Scenario sc;
  std::string mode = require_field(j, "", "mode").is_string()
                         ? j["mode"].get<std::string>()
                         : throw ScenarioError("scenario: field 'mode' must be a string");
  if (mode == "static")
    sc.mode = PlanMode::STATIC_2D;
  else if (mode == "spacetime")
    sc.mode = PlanMode::SPACETIME_3D;
  else
    throw ScenarioError("scenario: field 'mode' must be 'static' or 'spacetime'");
  const bool spacetime = sc.mode == PlanMode::SPACETIME_3D;

  const json& bounds = require_field(j, "", "bounds");
  if (!bounds.is_object()) throw ScenarioError("scenario: field 'bounds' must be an object");
  reject_unknown_keys(bounds, "bounds", {"min", "max"});
  sc.bounds_min = as_point(require_field(bounds, "bounds.", "min"), "bounds.min");
  sc.bounds_max = as_point(require_field(bounds, "bounds.", "max"), "bounds.max");
  if (!(sc.bounds_max(0) > sc.bounds_min(0)) || !(sc.bounds_max(1) > sc.bounds_min(1)))
    throw ScenarioError("scenario: field 'bounds' must satisfy max > min");

  if (j.contains("time")) {
    const json& time = j["time"];
    if (!time.is_object()) throw ScenarioError("scenario: field 'time' must be an object");
    reject_unknown_keys(time, "time", {"start", "end"});
    sc.t_start = as_number(require_field(time, "time.", "start"), "time.start");
    sc.t_end = as_number(require_field(time, "time.", "end"), "time.end");
  } else if (spacetime) {
    throw ScenarioError("scenario: missing required field 'time'");
  }
  if (!(sc.t_end > sc.t_start))
    throw ScenarioError("scenario: field 'time' must satisfy end > start");

  sc.start = as_point(require_field(j, "", "start"), "start");
  sc.goal = as_point(require_field(j, "", "goal"), "goal");
  if (!spacetime && (sc.start - sc.goal).norm() == 0.0)
    throw ScenarioError("scenario: start and goal must differ");

  if (j.contains("v_max")) {
    sc.v_max = as_number(j["v_max"], "v_max");
    if (!(sc.v_max > 0.0))
      throw ScenarioError("scenario: field 'v_max' must be positive");
  } else if (spacetime) {
    throw ScenarioError("scenario: missing required field 'v_max'");
  }

  if (j.contains("epsilon")) {
    sc.epsilon = as_number(j["epsilon"], "epsilon");
    if (!(sc.epsilon > 0.0))
      throw ScenarioError("scenario: field 'epsilon' must be positive");
  }
  if (j.contains("spline_order")) {
    sc.spline_order = static_cast<int>(as_integer(j["spline_order"], "spline_order"));
    if (sc.spline_order < 1)
      throw ScenarioError("scenario: field 'spline_order' must be at least 1");
  }

  if (j.contains("obstacles")) {
    const json& obstacles = j["obstacles"];
    if (!obstacles.is_array())
      throw ScenarioError("scenario: field 'obstacles' must be an array");
    for (size_t i = 0; i < obstacles.size(); ++i) {
      const std::string where = "obstacles[" + std::to_string(i) + "]";
      const json& o = obstacles[i];
      if (!o.is_object()) throw ScenarioError("scenario: " + where + " must be an object");
      reject_unknown_keys(o, where, {"vertices_start", "vertices_end"});
      ConvexPolygon2D start_shape =
          as_polygon(require_field(o, where + ".", "vertices_start"),
                     where + ".vertices_start");
      ConvexPolygon2D end_shape =
          o.contains("vertices_end")
              ? as_polygon(o["vertices_end"], where + ".vertices_end")
              : start_shape;
      if (!spacetime) {
        bool same = start_shape.size() == end_shape.size();
        for (int k = 0; same && k < start_shape.size(); ++k)
          same = start_shape.vertices()[k] == end_shape.vertices()[k];
        if (!same)
          throw ScenarioError("scenario: " + where +
                              " keyframes must be identical in static mode");
      }
      if (start_shape.size() != end_shape.size())
        throw ScenarioError("scenario: " + where +
                            " keyframes must have the same vertex count");
      sc.obstacles.push_back({std::move(start_shape), std::move(end_shape)});
    }
  }

  if (j.contains("iris")) {
    const json& iris = j["iris"];
    if (!iris.is_object()) throw ScenarioError("scenario: field 'iris' must be an object");
    reject_unknown_keys(iris, "iris",
                        {"samples", "seed", "max_iterations", "termination_growth"});
    if (iris.contains("samples")) {
      sc.iris_samples = static_cast<int>(as_integer(iris["samples"], "iris.samples"));
      if (sc.iris_samples < 0)
        throw ScenarioError("scenario: field 'iris.samples' must be non-negative");
    }
    if (iris.contains("seed")) {
      long long seed = as_integer(iris["seed"], "iris.seed");
      if (seed < 0) throw ScenarioError("scenario: field 'iris.seed' must be non-negative");
      sc.iris_seed = static_cast<unsigned long long>(seed);
    }
    if (iris.contains("max_iterations")) {
      sc.iris.max_iterations =
          static_cast<int>(as_integer(iris["max_iterations"], "iris.max_iterations"));
      if (sc.iris.max_iterations < 1)
        throw ScenarioError("scenario: field 'iris.max_iterations' must be at least 1");
    }
    if (iris.contains("termination_growth")) {
      sc.iris.termination_growth =
          as_number(iris["termination_growth"], "iris.termination_growth");
      if (!(sc.iris.termination_growth > 0.0))
        throw ScenarioError("scenario: field 'iris.termination_growth' must be positive");
    }
  }

  if (j.contains("solver")) {
    const json& solver = j["solver"];
    if (!solver.is_object())
      throw ScenarioError("scenario: field 'solver' must be an object");
    reject_unknown_keys(solver, "solver", {"integrality_tol", "gap_tol", "max_nodes"});
    if (solver.contains("integrality_tol"))
      sc.solver.integrality_tol = as_number(solver["integrality_tol"], "solver.integrality_tol");
    if (solver.contains("gap_tol"))
      sc.solver.gap_tol = as_number(solver["gap_tol"], "solver.gap_tol");
    if (solver.contains("max_nodes"))
      sc.solver.max_nodes = static_cast<int>(as_integer(solver["max_nodes"], "solver.max_nodes"));
  }

  if (warnings && spacetime) {
    double reach = sc.v_max * (sc.t_end - sc.t_start);
    double dist = (sc.goal - sc.start).norm();
    if (reach < dist - 1e-12)
      warnings->push_back("v_max * horizon = " + fmt(reach) +
                          " cannot cover the start-goal distance " + fmt(dist));
  }
  return sc;
}

Scenario load_scenario(const std::string& path, std::vector<std::string>* warnings) {
  return parse_scenario(read_file(path, "scenario"), warnings);
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["mode"] = sc.mode == PlanMode::STATIC_2D ? "static" : "spacetime";
  j["bounds"] = {{"min", point_to_json(sc.bounds_min)},
                 {"max", point_to_json(sc.bounds_max)}};
  j["time"] = {{"start", sc.t_start}, {"end", sc.t_end}};
  j["start"] = point_to_json(sc.start);
  j["goal"] = point_to_json(sc.goal);
  if (sc.v_max > 0.0) j["v_max"] = sc.v_max;
  j["epsilon"] = sc.epsilon;
  j["spline_order"] = sc.spline_order;
  json obstacles = json::array();
  for (const auto& o : sc.obstacles)
    obstacles.push_back({{"vertices_start", polygon_to_json(o.start_shape)},
                         {"vertices_end", polygon_to_json(o.end_shape)}});
  j["obstacles"] = obstacles;
  j["iris"] = {{"samples", sc.iris_samples},
               {"seed", sc.iris_seed},
               {"max_iterations", sc.iris.max_iterations},
               {"termination_growth", sc.iris.termination_growth}};
  j["solver"] = {{"integrality_tol", sc.solver.integrality_tol},
                 {"gap_tol", sc.solver.gap_tol},
                 {"max_nodes", sc.solver.max_nodes}};
  return j.dump(2) + "\n";
}

//--------------------------------------------------------------------------
// Outputs
//--------------------------------------------------------------------------

StoredSolution load_solution(const std::string& path) {
  json j = parse_json_text(read_file(path, "solution"), "solution");
  if (!j.is_object()) throw ScenarioError("solution: top level must be an object");
  StoredSolution out;
  out.scenario = parse_scenario(require_field(j, "", "scenario").dump());
  for (const json& r : require_field(j, "", "regions"))
    out.regions.push_back(region_from_json(r));
  for (const json& v : require_field(j, "", "path")) out.path.push_back(v.get<int>());
  for (const json& seg : require_field(j, "", "segments")) {
    std::vector<Point> ctrl;
    for (const json& pt : seg) {
      Point p(static_cast<int>(pt.size()));
      for (int c = 0; c < p.size(); ++c) p(c) = pt[c].get<double>();
      ctrl.push_back(p);
    }
    out.segments.emplace_back(std::move(ctrl));
  }
  out.cost = require_field(j, "", "cost").get<double>();
  out.lower_bound = require_field(j, "", "lower_bound").get<double>();
  const json& st = require_field(j, "", "stats");
  out.stats.nodes_explored = st["nodes_explored"].get<int>();
  out.stats.relaxations_solved = st["relaxations_solved"].get<int>();
  out.stats.root_relaxation_cost = st["root_relaxation_cost"].is_null()
                                       ? std::nan("")
                                       : st["root_relaxation_cost"].get<double>();
  out.stats.node_limit_hit = st["node_limit_hit"].get<bool>();
  out.stats.inexact = st["inexact"].get<bool>();
  out.stats.time_relaxation = st["times"]["relaxation"].get<double>();
  out.stats.time_restriction = st["times"]["restriction"].get<double>();
  out.stats.time_total = st["times"]["total"].get<double>();
  const json& rep = require_field(j, "", "validation");
  out.report.passed = rep["passed"].get<bool>();
  out.report.max_speed = rep["max_speed"].get<double>();
  out.report.max_junction_continuity_residual =
      rep["max_junction_continuity_residual"].get<double>();
  out.report.max_junction_diff_residual = rep["max_junction_diff_residual"].get<double>();
  out.report.terminal_errors(0) = rep["terminal_errors"][0].get<double>();
  out.report.terminal_errors(1) = rep["terminal_errors"][1].get<double>();
  out.report.time_monotone = rep["time_monotone"].get<bool>();
  for (const json& ev : rep["collision_events"]) {
    CollisionEvent e;
    e.t = ev["t"].get<double>();
    e.point = Eigen::Vector2d(ev["point"][0].get<double>(), ev["point"][1].get<double>());
    e.obstacle = ev["obstacle"].get<int>();
    out.report.collision_events.push_back(e);
  }
  return out;
}

void write_outputs(const Scenario& sc, const std::vector<HPolytope>& regions,
                   const Solution& sol, const ValidationReport& report,
                   const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  {
    std::ofstream csv(fs::path(out_dir) / "trajectory.csv");
    if (!csv) throw std::runtime_error("outputs: cannot write trajectory.csv");
    csv << "t,x,y\n";
    const int n = 1000;
    const double dt = (sc.t_end - sc.t_start) / n;
    char line[160];
    for (int k = 0; k <= n; ++k) {
      double t = k == n ? sc.t_end : sc.t_start + k * dt;
      Eigen::Vector2d p = sample_position(sol.trajectory, t, sc.t_start, sc.t_end);
      std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g\n", t, p(0), p(1));
      csv << line;
    }
  }

  {
    json j;
    j["scenario"] = json::parse(scenario_to_json(sc));
    json regs = json::array();
    for (const auto& r : regions) regs.push_back(region_to_json(r));
    j["regions"] = regs;
    j["path"] = sol.path;
    json segs = json::array();
    for (const auto& seg : sol.trajectory.segments()) {
      json pts = json::array();
      for (const auto& c : seg.control) {
        json pt = json::array();
        for (int i = 0; i < c.size(); ++i) pt.push_back(c(i));
        pts.push_back(pt);
      }
      segs.push_back(pts);
    }
    j["segments"] = segs;
    j["cost"] = sol.cost;
    j["lower_bound"] = sol.lower_bound;
    j["stats"] = stats_to_json(sol.stats);
    j["validation"] = report_to_json(report);
    std::ofstream out(fs::path(out_dir) / "solution.json");
    if (!out) throw std::runtime_error("outputs: cannot write solution.json");
    out << j.dump(2) << "\n";
  }

  {
    std::ofstream svg(fs::path(out_dir) / "plot.svg");
    if (!svg) throw std::runtime_error("outputs: cannot write plot.svg");
    svg << render_svg(sc, regions, sol.trajectory.segments());
  }
}

std::string render_svg(const Scenario& sc, const std::vector<HPolytope>& regions,
                       const std::vector<BezierSegment>& segments,
                       std::optional<double> cross_section) {
  const double pad = 20.0;
  const double span_x = sc.bounds_max(0) - sc.bounds_min(0);
  const double span_y = sc.bounds_max(1) - sc.bounds_min(1);
  const double scale = 520.0 / std::max(span_x, span_y);
  const double W = 2 * pad + span_x * scale;
  const double H = 2 * pad + span_y * scale;
  auto fx = [&](double x) { return pad + (x - sc.bounds_min(0)) * scale; };
  auto fy = [&](double y) { return pad + (sc.bounds_max(1) - y) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(W) << " "
      << fmt(H) << "\">\n";
  out << "<rect x=\"" << fmt(fx(sc.bounds_min(0))) << "\" y=\"" << fmt(fy(sc.bounds_max(1)))
      << "\" width=\"" << fmt(span_x * scale) << "\" height=\"" << fmt(span_y * scale)
      << "\" fill=\"#ffffff\" stroke=\"#333333\"/>\n";

  for (const auto& region : regions) {
    auto hull = polytope_shadow(region);
    if (hull.size() < 3) continue;
    out << "<polygon points=\"";
    for (const auto& v : hull) out << fmt(fx(v(0))) << "," << fmt(fy(v(1))) << " ";
    out << "\" fill=\"#4a90d9\" fill-opacity=\"0.08\" stroke=\"#4a90d9\" "
           "stroke-opacity=\"0.6\"/>\n";
  }

  for (const auto& o : sc.obstacles) {
    std::vector<const ConvexPolygon2D*> caps;
    ConvexPolygon2D snapshot({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0),
                              Eigen::Vector2d(0, 1)});
    if (cross_section) {
      SpaceTimeObstacle prism =
          extrude_obstacle(o.start_shape, o.end_shape, sc.t_start, sc.t_end);
      snapshot = obstacle_cross_section(
          prism, std::clamp(*cross_section, sc.t_start, sc.t_end));
      caps = {&snapshot};
    } else {
      caps = {&o.start_shape, &o.end_shape};
    }
    out << "<path d=\"";
    for (const auto* cap : caps) {
      const auto& vs = cap->vertices();
      for (size_t i = 0; i < vs.size(); ++i)
        out << (i == 0 ? "M" : "L") << fmt(fx(vs[i](0))) << " " << fmt(fy(vs[i](1)));
      out << "Z";
    }
    out << "\" fill=\"#222222\" fill-opacity=\"0.35\" stroke=\"#222222\"/>\n";
  }

  if (!segments.empty()) {
    const int samples = 256;
    out << "<path d=\"";
    for (int k = 0; k <= samples; ++k) {
      double u = static_cast<double>(k) / samples;
      int idx = std::min(static_cast<int>(u * segments.size()),
                         static_cast<int>(segments.size()) - 1);
      Point p = bezier_eval(segments[idx], u * segments.size() - idx);
      out << (k == 0 ? "M" : "L") << fmt(fx(p(0))) << " " << fmt(fy(p(1)));
    }
    out << "\" fill=\"none\" stroke=\"#d64541\" stroke-width=\"2\"/>\n";
  }

  out << "<circle cx=\"" << fmt(fx(sc.start(0))) << "\" cy=\"" << fmt(fy(sc.start(1)))
      << "\" r=\"5\" fill=\"#2e9e44\"/>\n";
  out << "<circle cx=\"" << fmt(fx(sc.goal(0))) << "\" cy=\"" << fmt(fy(sc.goal(1)))
      << "\" r=\"5\" fill=\"#d64541\"/>\n";
  out << "</svg>\n";
  return out.str();
}

//--------------------------------------------------------------------------
// CLI
//--------------------------------------------------------------------------

namespace {

struct PlanResult {
  std::vector<HPolytope> regions;
  int edges = 0;
  Solution solution{std::vector<int>{}, Trajectory({BezierSegment({Point::Zero(2), Point::Ones(2)})},
                                                   PlanMode::STATIC_2D),
                    0.0, 0.0, SolveStats{}};
  ValidationReport report;
};

PlanResult run_pipeline(const Scenario& sc) {
  PlanResult out;
  Environment env = scenario_environment(sc);
  out.regions = generate_regions(env, lift_start(sc), lift_goal(sc), sc.iris_samples,
                                 sc.iris_seed, sc.iris);
  GcsGraph g = build_graph(out.regions);
  out.edges = static_cast<int>(g.edges.size());
  Terminals t = locate_terminals(g, lift_start(sc), lift_goal(sc));
  out.solution = solve_gcs(g, t, scenario_params(sc), sc.solver);
  out.report = validate_solution(out.solution.trajectory, sc);
  return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Collision-free trajectory planning over graphs of convex sets"};
  app.require_subcommand(1);

  std::string scenario_path, solution_path, out_path;
  int samples_override = 0, order_override = 0;
  long long seed_override = 0;
  std::vector<int> sweep_samples;
  int sweep_repeats = 3;
  double cross_section = 0.0;

  CLI::App* plan = app.add_subcommand("plan", "Plan a trajectory for a scenario");
  plan->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  plan->add_option("--out", out_path, "Output directory")->required();
  auto* plan_samples = plan->add_option("--samples", samples_override, "Region sample count");
  auto* plan_seed = plan->add_option("--seed", seed_override, "Region sampling seed");
  auto* plan_order = plan->add_option("--order", order_override, "Spline order");

  CLI::App* validate = app.add_subcommand("validate", "Re-check a stored solution");
  validate->add_option("--solution", solution_path, "solution.json file")->required();
  validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Vary region sampling and tabulate results");
  sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--samples", sweep_samples, "Comma-separated sample counts")
      ->required()
      ->delimiter(',');
  sweep->add_option("--repeats", sweep_repeats, "Seeds 0..R-1 per sample count");
  sweep->add_option("--out", out_path, "Output CSV file")->required();

  CLI::App* render = app.add_subcommand("render", "Draw a stored solution as SVG");
  render->add_option("--solution", solution_path, "solution.json file")->required();
  render->add_option("--out", out_path, "Output SVG file")->required();
  auto* render_cs =
      render->add_option("--cross-section", cross_section, "Obstacle snapshot time");

  CLI::App* dump = app.add_subcommand("dump-scenario", "Parse and re-emit a scenario");
  dump->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  auto* dump_out = dump->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("stgcs");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(plan)) {
      std::vector<std::string> warnings;
      Scenario sc = load_scenario(scenario_path, &warnings);
      print_warnings(warnings);
      if (plan_samples->count()) sc.iris_samples = samples_override;
      if (plan_seed->count()) {
        if (seed_override < 0) throw ScenarioError("scenario: seed must be non-negative");
        sc.iris_seed = static_cast<unsigned long long>(seed_override);
      }
      if (plan_order->count()) sc.spline_order = order_override;
      PlanResult r = run_pipeline(sc);
      write_outputs(sc, r.regions, r.solution, r.report, out_path);
      std::cout << "cost " << r.solution.cost << " lower_bound " << r.solution.lower_bound
                << " sets " << r.regions.size() << " edges " << r.edges << " validation "
                << (r.report.passed ? "passed" : "FAILED") << "\n";
      return 0;
    }

    if (app.got_subcommand(validate)) {
      StoredSolution stored = load_solution(solution_path);
      std::vector<std::string> warnings;
      Scenario sc = load_scenario(scenario_path, &warnings);
      print_warnings(warnings);
      int dim = sc.mode == PlanMode::STATIC_2D ? 2 : 3;
      if (stored.segments.empty() || stored.segments.front().dim() != dim)
        throw std::runtime_error("validate: solution does not match the scenario mode");
      ValidationReport rep = validate_segments(stored.segments, sc.mode, sc);
      std::cout << report_to_json(rep).dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(sweep)) {
      Scenario sc = load_scenario(scenario_path);
      std::ofstream csv(out_path);
      if (!csv) throw std::runtime_error("sweep: cannot write '" + out_path + "'");
      csv << "samples,sets,edges,cost,time\n";
      for (int samples : sweep_samples) {
        double sum_sets = 0, sum_edges = 0, sum_cost = 0, sum_time = 0;
        int runs = 0, solved = 0;
        for (int rep = 0; rep < sweep_repeats; ++rep) {
          Scenario inst = sc;
          inst.iris_samples = samples;
          inst.iris_seed = static_cast<unsigned long long>(rep);
          auto t0 = std::chrono::steady_clock::now();
          try {
            PlanResult r = run_pipeline(inst);
            sum_sets += static_cast<double>(r.regions.size());
            sum_edges += r.edges;
            ++runs;
            sum_cost += r.solution.cost;
            sum_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
            ++solved;
          } catch (const std::exception& e) {
            std::cerr << "sweep: samples " << samples << " seed " << rep
                      << " failed: " << e.what() << "\n";
          }
        }
        char line[200];
        std::snprintf(line, sizeof line, "%d,%.9g,%.9g,%.9g,%.9g\n", samples,
                      runs ? sum_sets / runs : std::nan(""),
                      runs ? sum_edges / runs : std::nan(""),
                      solved ? sum_cost / solved : std::nan(""),
                      solved ? sum_time / solved : std::nan(""));
        csv << line;
        std::cout << line;
      }
      return 0;
    }

    if (app.got_subcommand(render)) {
      StoredSolution stored = load_solution(solution_path);
      std::optional<double> cs;
      if (render_cs->count()) cs = cross_section;
      std::ofstream svg(out_path);
      if (!svg) throw std::runtime_error("render: cannot write '" + out_path + "'");
      svg << render_svg(stored.scenario, stored.regions, stored.segments, cs);
      return 0;
    }

    if (app.got_subcommand(dump)) {
      std::vector<std::string> warnings;
      Scenario sc = load_scenario(scenario_path, &warnings);
      print_warnings(warnings);
      std::string text = scenario_to_json(sc);
      if (dump_out->count()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("dump-scenario: cannot write '" + out_path + "'");
        out << text;
      } else {
        std::cout << text;
      }
      return 0;
    }
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const NoContainingSet& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace stgcs
