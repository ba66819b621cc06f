#include "stgcs/iris.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "stgcs/conic.hpp"

namespace stgcs {

//--------------------------------------------------------------------------
// Environment
//--------------------------------------------------------------------------

std::vector<Eigen::VectorXd> Environment::obstacle_vertices(int i) const {
  const auto& obs = obstacles.at(i);
  std::vector<Eigen::VectorXd> out;
  if (mode == PlanMode::STATIC_2D) {
    out.reserve(obs.start_polygon().size());
    for (const auto& v : obs.start_polygon().vertices()) {
      Eigen::VectorXd p(2);
      p << v(0), v(1);
      out.push_back(p);
    }
  } else {
    for (const auto& v : obs.prism_vertices()) out.push_back(v);
  }
  return out;
}

bool Environment::point_in_obstacle(int i, const Eigen::VectorXd& p, double margin) const {
  const auto& obs = obstacles.at(i);
  if (mode == PlanMode::STATIC_2D)
    return point_in_polygon(obs.start_polygon(), p.head<2>(), margin);
  double t = p(2);
  if (t < obs.t_start() || t > obs.t_end()) return false;
  return point_in_polygon(obstacle_cross_section(obs, t), p.head<2>(), margin);
}

bool Environment::point_in_any_obstacle(const Eigen::VectorXd& p, double margin) const {
  for (size_t i = 0; i < obstacles.size(); ++i)
    if (point_in_obstacle(static_cast<int>(i), p, margin)) return true;
  return false;
}

//--------------------------------------------------------------------------
// Maximum-volume inscribed ellipsoid
//--------------------------------------------------------------------------

namespace {

// Linear objective extreme over the polytope; UNBOUNDED propagates out.
bool direction_bounded(const HPolytope& p, int axis, double sign) {
  ConicProgram prog(p.dim());
  prog.set_objective(axis, -sign);
  int blk = prog.add_block(ConeTag::NONNEG, p.rows());
  int r0 = prog.blocks()[blk].row_offset;
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.dim(); ++j) prog.add_entry(r0 + i, j, p.A()(i, j));
    prog.set_rhs(r0 + i, p.d()(i));
  }
  auto sol = solve_conic(prog);
  return sol.status != SolveStatus::UNBOUNDED;
}

// Symmetric-matrix parametrization: packed upper triangle then the center.
struct SymBasis {
  int d;
  std::vector<std::pair<int, int>> ij;
  explicit SymBasis(int dim) : d(dim) {
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) ij.emplace_back(i, j);
  }
  int count() const { return static_cast<int>(ij.size()); }
  Eigen::MatrixXd mat(int k) const {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
    auto [i, j] = ij[k];
    e(i, j) = 1.0;
    e(j, i) = 1.0;
    return e;
  }
};

struct MvieEval {
  bool feasible = false;
  double value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd slack;   // per facet
  Eigen::MatrixXd c_inv;
  Eigen::VectorXd norms;   // ||C a_i||
};

MvieEval mvie_eval(const Eigen::MatrixXd& A, const Eigen::VectorXd& d,
                   const Eigen::MatrixXd& C, const Eigen::VectorXd& c, double mu) {
  MvieEval ev;
  const int m = static_cast<int>(A.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() != Eigen::Success) return ev;
  double logdet = 0.0;
  for (int i = 0; i < C.rows(); ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  ev.slack.resize(m);
  ev.norms.resize(m);
  double barrier = 0.0;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd a = A.row(i).transpose();
    double n = (C * a).norm();
    double s = d(i) - a.dot(c) - n;
    if (s <= 0.0) return ev;
    ev.slack(i) = s;
    ev.norms(i) = n;
    barrier += std::log(s);
  }
  ev.feasible = true;
  ev.value = logdet + mu * barrier;
  ev.c_inv = llt.solve(Eigen::MatrixXd::Identity(C.rows(), C.cols()));
  return ev;
}

}  // namespace

Ellipsoid inscribed_ellipsoid(const HPolytope& p) {
  const int d = p.dim();
  for (int axis = 0; axis < d; ++axis)
    for (double sign : {1.0, -1.0})
      if (!direction_bounded(p, axis, sign))
        throw std::invalid_argument("inscribed_ellipsoid: unbounded polytope");

  ChebyshevBall cheb = chebyshev_ball(p.A(), p.d());
  if (cheb.radius < 1e-10)
    throw std::runtime_error("inscribed_ellipsoid: degenerate polytope");

  const Eigen::MatrixXd& A = p.A();
  const Eigen::VectorXd& rhs = p.d();
  SymBasis basis(d);
  const int nc = basis.count();
  const int np = nc + d;

  Eigen::MatrixXd C = 0.9 * cheb.radius * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd c = cheb.center;
  bool converged = true;

  for (double mu = 1.0; mu >= 1e-8; mu *= 0.1) {
    for (int newton = 0; newton < 60; ++newton) {
      MvieEval ev = mvie_eval(A, rhs, C, c, mu);
      if (!ev.feasible) {
        converged = false;
        break;
      }
      const int m = static_cast<int>(A.rows());

      // gradient
      Eigen::MatrixXd gradC = ev.c_inv;
      Eigen::VectorXd gradc = Eigen::VectorXd::Zero(d);
      std::vector<Eigen::VectorXd> unit_u(m);
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd a = A.row(i).transpose();
        unit_u[i] = (C * a) / ev.norms(i);
        gradC -= (mu / ev.slack(i)) * 0.5 *
                 (unit_u[i] * a.transpose() + a * unit_u[i].transpose());
        gradc -= (mu / ev.slack(i)) * a;
      }
      Eigen::VectorXd g(np);
      for (int k = 0; k < nc; ++k) {
        auto [ii, jj] = basis.ij[k];
        g(k) = (ii == jj) ? gradC(ii, ii) : 2.0 * gradC(ii, jj);
      }
      g.tail(d) = gradc;

      // Hessian
      std::vector<Eigen::MatrixXd> B(nc);
      for (int k = 0; k < nc; ++k) B[k] = ev.c_inv * basis.mat(k);
      Eigen::MatrixXd H = Eigen::MatrixXd::Zero(np, np);
      for (int k = 0; k < nc; ++k)
        for (int l = k; l < nc; ++l) {
          double v = -(B[k] * B[l]).trace();
          H(k, l) += v;
          if (l != k) H(l, k) += v;
        }
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd a = A.row(i).transpose();
        const double s = ev.slack(i);
        Eigen::VectorXd delta(np);  // first-order slack change per parameter
        std::vector<Eigen::VectorXd> w(nc);
        for (int k = 0; k < nc; ++k) {
          w[k] = basis.mat(k) * a;
          delta(k) = -unit_u[i].dot(w[k]);
        }
        for (int k = 0; k < d; ++k) delta(nc + k) = -a(k);
        for (int k = 0; k < nc; ++k)
          for (int l = k; l < nc; ++l) {
            double q = (w[k].dot(w[l]) - unit_u[i].dot(w[k]) * unit_u[i].dot(w[l])) /
                       ev.norms(i);
            double v = -mu * q / s;
            H(k, l) += v;
            if (l != k) H(l, k) += v;
          }
        H -= (mu / (s * s)) * delta * delta.transpose();
      }

      // ascent step with damping ladder
      Eigen::VectorXd step;
      double decrement = 0.0;
      double damp = 0.0;
      for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXd Hn = -H + damp * Eigen::MatrixXd::Identity(np, np);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Hn);
        if (ldlt.info() == Eigen::Success) {
          step = ldlt.solve(g);
          decrement = g.dot(step);
          if (decrement > 0.0 && step.allFinite()) break;
        }
        damp = (damp == 0.0) ? 1e-10 : damp * 100.0;
        decrement = 0.0;
      }
      if (decrement <= 1e-11) break;

      double t = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
        Eigen::MatrixXd Ct = C;
        Eigen::VectorXd ct = c + t * step.tail(d);
        for (int k = 0; k < nc; ++k) {
          auto [ii, jj] = basis.ij[k];
          Ct(ii, jj) += t * step(k);
          if (ii != jj) Ct(jj, ii) += t * step(k);
        }
        MvieEval trial = mvie_eval(A, rhs, Ct, ct, mu);
        if (trial.feasible && trial.value >= ev.value + 0.25 * t * decrement) {
          C = Ct;
          c = ct;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    if (!converged) break;
  }

  if (converged) {
    MvieEval final_ev = mvie_eval(A, rhs, C, c, 1e-8);
    if (final_ev.feasible) {
      Eigen::MatrixXd sym = 0.5 * (C + C.transpose());
      return Ellipsoid(c, sym);
    }
  }
  // documented fallback: the certified Chebyshev ball
  return Ellipsoid(cheb.center, cheb.radius * Eigen::MatrixXd::Identity(d, d));
}

//--------------------------------------------------------------------------
// Closest points in a scaled metric
//--------------------------------------------------------------------------

namespace {

struct ClosestPoint {
  double dist = 0.0;
  Eigen::VectorXd point;
};

// min ||M (x - center)|| over conv(verts); vars (t, lambda).
ClosestPoint closest_point_vrep(const Eigen::MatrixXd& M, const Eigen::VectorXd& center,
                                const std::vector<Eigen::VectorXd>& verts) {
  const int d = static_cast<int>(center.size());
  const int k = static_cast<int>(verts.size());
  ConicProgram prog(1 + k);
  prog.set_objective(0, 1.0);
  int eq = prog.add_block(ConeTag::ZERO, 1);
  int r0 = prog.blocks()[eq].row_offset;
  for (int i = 0; i < k; ++i) prog.add_entry(r0, 1 + i, 1.0);
  prog.set_rhs(r0, 1.0);
  int nn = prog.add_block(ConeTag::NONNEG, k);
  r0 = prog.blocks()[nn].row_offset;
  for (int i = 0; i < k; ++i) prog.add_entry(r0 + i, 1 + i, -1.0);
  int soc = prog.add_block(ConeTag::SOC, 1 + d);
  r0 = prog.blocks()[soc].row_offset;
  prog.add_entry(r0, 0, -1.0);
  Eigen::VectorXd mc = M * center;
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < k; ++i) {
      double coeff = M.row(r).dot(verts[i]);
      prog.add_entry(r0 + 1 + r, 1 + i, -coeff);
    }
    prog.set_rhs(r0 + 1 + r, -mc(r));
  }
  auto sol = solve_conic(prog);
  if (sol.status != SolveStatus::OPTIMAL)
    throw std::runtime_error("closest_point: solve failed");
  ClosestPoint cp;
  cp.dist = sol.objective_value;
  Eigen::VectorXd lambda = sol.primal.tail(k).cwiseMax(0.0);
  lambda /= lambda.sum();
  cp.point = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < k; ++i) cp.point += lambda(i) * verts[i];
  return cp;
}

// min ||M (x - center)|| over {A x <= d}; vars (t, x).
ClosestPoint closest_point_hrep(const Eigen::MatrixXd& M, const Eigen::VectorXd& center,
                                const HPolytope& poly) {
  // interior center puts the cone optimum at its apex, which stalls the
  // interior-point iteration; the answer is known anyway
  if (point_in_hpolytope(poly, center, 0.0)) return {0.0, center};
  const int d = static_cast<int>(center.size());
  ConicProgram prog(1 + d);
  prog.set_objective(0, 1.0);
  int nn = prog.add_block(ConeTag::NONNEG, poly.rows());
  int r0 = prog.blocks()[nn].row_offset;
  for (int i = 0; i < poly.rows(); ++i) {
    for (int j = 0; j < d; ++j) prog.add_entry(r0 + i, 1 + j, poly.A()(i, j));
    prog.set_rhs(r0 + i, poly.d()(i));
  }
  int soc = prog.add_block(ConeTag::SOC, 1 + d);
  r0 = prog.blocks()[soc].row_offset;
  prog.add_entry(r0, 0, -1.0);
  Eigen::VectorXd mc = M * center;
  for (int r = 0; r < d; ++r) {
    for (int j = 0; j < d; ++j) prog.add_entry(r0 + 1 + r, 1 + j, -M(r, j));
    prog.set_rhs(r0 + 1 + r, -mc(r));
  }
  auto sol = solve_conic(prog);
  if (sol.status != SolveStatus::OPTIMAL)
    throw std::runtime_error("closest_point: solve failed");
  ClosestPoint cp;
  cp.dist = sol.objective_value;
  cp.point = sol.primal.tail(d);
  return cp;
}

Eigen::MatrixXd inverse_shape(const Eigen::MatrixXd& C) {
  return C.llt().solve(Eigen::MatrixXd::Identity(C.rows(), C.cols()));
}

}  // namespace

std::pair<Eigen::VectorXd, double> separating_hyperplane(
    const Ellipsoid& e, const std::vector<Eigen::VectorXd>& obstacle_vertices) {
  if (obstacle_vertices.empty())
    throw std::invalid_argument("separating_hyperplane: no vertices");
  for (const auto& v : obstacle_vertices)
    if (v.size() != e.dim())
      throw std::invalid_argument("separating_hyperplane: vertex dim mismatch");
  Eigen::MatrixXd Minv = inverse_shape(e.shape());
  ClosestPoint cp = closest_point_vrep(Minv, e.center(), obstacle_vertices);
  if (cp.dist <= 1e-9)
    throw std::invalid_argument("separating_hyperplane: center inside obstacle");
  Eigen::VectorXd dir = Minv * (Minv * (cp.point - e.center()));
  double n = dir.norm();
  if (n < 1e-14) throw std::runtime_error("separating_hyperplane: degenerate normal");
  dir /= n;
  return {dir, dir.dot(cp.point)};
}

//--------------------------------------------------------------------------
// Region inflation
//--------------------------------------------------------------------------

namespace {

// Drops faces the remaining system implies with >= 1e-6 slack; the region is
// unchanged as a set. Exactly-tight faces (pinned obstacle planes, duplicates)
// stay so obstacle exclusion is preserved bit for bit.
HPolytope drop_redundant_faces(const HPolytope& p) {
  const int m = p.rows();
  const int dim = p.dim();
  std::vector<char> keep(m, 1);
  int kept = m;
  for (int i = m - 1; i >= 0 && kept > 1; --i) {
    ConicProgram prog(dim);
    for (int j = 0; j < dim; ++j) prog.set_objective(j, -p.A()(i, j));
    int blk = prog.add_block(ConeTag::NONNEG, kept - 1);
    int r0 = prog.blocks()[blk].row_offset;
    int at = 0;
    for (int r = 0; r < m; ++r) {
      if (!keep[r] || r == i) continue;
      for (int j = 0; j < dim; ++j) prog.add_entry(r0 + at, j, p.A()(r, j));
      prog.set_rhs(r0 + at, p.d()(r));
      ++at;
    }
    auto sol = solve_conic(prog);
    if (sol.status != SolveStatus::OPTIMAL) continue;  // unbounded: face is load-bearing
    if (-sol.objective_value <= p.d()(i) - 1e-6) {
      keep[i] = 0;
      --kept;
    }
  }
  if (kept == m) return p;
  Eigen::MatrixXd A(kept, dim);
  Eigen::VectorXd d(kept);
  int at = 0;
  for (int r = 0; r < m; ++r) {
    if (!keep[r]) continue;
    A.row(at) = p.A().row(r);
    d(at) = p.d()(r);
    ++at;
  }
  return HPolytope(A, d);
}

}  // namespace

HPolytope inflate_region(const Eigen::VectorXd& seed, const Environment& env,
                         const std::vector<HPolytope>& existing,
                         const IrisParams& params, IrisDebug* debug) {
  const int dim = env.dim();
  if (seed.size() != dim) throw std::invalid_argument("inflate_region: seed dim mismatch");
  if (!point_in_hpolytope(env.bounds, seed, 1e-9))
    throw SeedRejected("inflate_region: seed outside bounds");
  for (size_t i = 0; i < env.obstacles.size(); ++i)
    if (env.point_in_obstacle(static_cast<int>(i), seed, params.seed_rejection_tol))
      throw SeedRejected("inflate_region: seed inside an obstacle");
  for (const auto& r : existing)
    if (point_in_hpolytope(r, seed, 0.0))
      throw SeedRejected("inflate_region: seed inside an existing region");

  std::vector<std::vector<Eigen::VectorXd>> obstacle_verts;
  obstacle_verts.reserve(env.obstacles.size());
  for (size_t i = 0; i < env.obstacles.size(); ++i)
    obstacle_verts.push_back(env.obstacle_vertices(static_cast<int>(i)));

  const double r0 = 1e-3 * std::max(1e-6, chebyshev_ball(env.bounds.A(), env.bounds.d()).radius);
  Ellipsoid metric(seed, r0 * Eigen::MatrixXd::Identity(dim, dim));
  double prev_logdet = std::numeric_limits<double>::quiet_NaN();

  struct Candidate {
    double dist;
    int kind;  // 0 obstacle, 1 region
    int idx;
    Eigen::VectorXd closest;
  };

  HPolytope region = env.bounds;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    Eigen::MatrixXd Minv = inverse_shape(metric.shape());
    std::vector<Candidate> cands;
    for (size_t i = 0; i < obstacle_verts.size(); ++i) {
      ClosestPoint cp;
      try {
        cp = closest_point_vrep(Minv, metric.center(), obstacle_verts[i]);
      } catch (const std::runtime_error&) {
        cp = {0.0, metric.center()};  // near-apex stall; plane falls back to the seed metric
      }
      if (cp.dist <= 1e-9 && iter == 0)
        throw SeedRejected("inflate_region: seed touches an obstacle");
      cands.push_back({cp.dist, 0, static_cast<int>(i), cp.point});
    }
    for (size_t j = 0; j < existing.size(); ++j) {
      ClosestPoint cp;
      try {
        cp = closest_point_hrep(Minv, metric.center(), existing[j]);
      } catch (const std::runtime_error&) {
        cp = {0.0, metric.center()};
      }
      cands.push_back({cp.dist, 1, static_cast<int>(j), cp.point});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.kind != b.kind) return a.kind < b.kind;
      return a.idx < b.idx;
    });

    std::vector<std::pair<Eigen::VectorXd, double>> planes;
    for (const auto& cand : cands) {
      if (cand.kind == 0) {
        bool separated = false;
        for (const auto& [pa, pb] : planes) {
          bool all = true;
          for (const auto& v : obstacle_verts[cand.idx])
            if (pa.dot(v) < pb - 1e-12) {
              all = false;
              break;
            }
          if (all) {
            separated = true;
            break;
          }
        }
        if (separated) continue;
      }

      auto make_plane = [&](const Eigen::MatrixXd& M, const Eigen::VectorXd& origin,
                            const Eigen::VectorXd& closest) {
        Eigen::VectorXd dir = M * (M * (closest - origin));
        double n = dir.norm();
        if (n < 1e-14) throw std::runtime_error("inflate_region: degenerate plane");
        dir /= n;
        double b = dir.dot(closest);
        if (cand.kind == 0) {
          // pin the plane to the extreme obstacle vertex so the obstacle
          // stays excluded exactly
          for (const auto& v : obstacle_verts[cand.idx]) b = std::min(b, dir.dot(v));
        }
        return std::make_pair(dir, b);
      };

      std::pair<Eigen::VectorXd, double> plane;
      bool from_seed = cand.dist <= 1e-9;  // touching set: no usable direction at the center
      if (!from_seed) {
        plane = make_plane(Minv, metric.center(), cand.closest);
        // plane would cut the seed away; rebuild it in the seed's own metric
        from_seed = plane.first.dot(seed) > plane.second - params.boundary_tol;
      }
      if (from_seed) {
        Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);
        ClosestPoint cp2 = (cand.kind == 0)
                               ? closest_point_vrep(eye, seed, obstacle_verts[cand.idx])
                               : closest_point_hrep(eye, seed, existing[cand.idx]);
        if (cp2.dist <= 1e-12)
          throw SeedRejected("inflate_region: seed on an occupied boundary");
        plane = make_plane(eye, seed, cp2.point);
      }
      // Planes against existing regions are coverage guides, not safety
      // constraints, so push them a little into the neighbor. The deliberate
      // overlap guarantees adjacent regions share a full-width interior slab
      // instead of a sliver at the tolerance floor of the projection solves;
      // sliver-thin intersections distort restriction optima macroscopically
      // through the barrier. Collision exclusion only ever comes from the
      // obstacle-pinned planes, which stay exact.
      if (cand.kind == 1) plane.second += 1e-4;
      planes.push_back(std::move(plane));
    }

    Eigen::MatrixXd A(env.bounds.rows() + planes.size(), dim);
    Eigen::VectorXd d(env.bounds.rows() + planes.size());
    A.topRows(env.bounds.rows()) = env.bounds.A();
    d.head(env.bounds.rows()) = env.bounds.d();
    for (size_t i = 0; i < planes.size(); ++i) {
      A.row(env.bounds.rows() + i) = planes[i].first.transpose();
      d(env.bounds.rows() + i) = planes[i].second;
    }
    region = HPolytope(A, d);

    Ellipsoid grown = inscribed_ellipsoid(region);
    double logdet = grown.log_det_shape();
    if (debug) debug->log_det_per_iteration.push_back(logdet);
    metric = grown;
    if (!std::isnan(prev_logdet)) {
      double growth = std::exp(logdet - prev_logdet) - 1.0;
      if (growth < params.termination_growth) break;
    }
    prev_logdet = logdet;
  }
  return drop_redundant_faces(region);
}

//--------------------------------------------------------------------------
// Region generation
//--------------------------------------------------------------------------

std::vector<HPolytope> generate_regions(const Environment& env,
                                        const Eigen::VectorXd& start,
                                        const Eigen::VectorXd& goal, int n_samples,
                                        unsigned long long rng_seed,
                                        const IrisParams& params) {
  const int dim = env.dim();
  if (start.size() != dim || goal.size() != dim)
    throw std::invalid_argument("generate_regions: terminal dim mismatch");
  if (n_samples < 0) throw std::invalid_argument("generate_regions: negative sample count");
  for (const auto* p : {&start, &goal}) {
    if (!point_in_hpolytope(env.bounds, *p, 1e-9))
      throw std::invalid_argument("generate_regions: terminal outside bounds");
    if (env.point_in_any_obstacle(*p, 0.0))
      throw std::invalid_argument("generate_regions: terminal inside an obstacle");
  }

  std::vector<HPolytope> regions;
  auto covered = [&](const Eigen::VectorXd& p) {
    for (const auto& r : regions)
      if (point_in_hpolytope(r, p, 0.0)) return true;
    return false;
  };

  for (const auto* p : {&start, &goal}) {
    if (covered(*p)) continue;
    regions.push_back(inflate_region(*p, env, regions, params));
  }

  // per-axis extents for sampling, from the bounds polytope itself
  Eigen::VectorXd lo(dim), hi(dim);
  for (int axis = 0; axis < dim; ++axis) {
    for (double sign : {1.0, -1.0}) {
      ConicProgram prog(dim);
      prog.set_objective(axis, sign);  // minimize sign*x_axis
      int blk = prog.add_block(ConeTag::NONNEG, env.bounds.rows());
      int r0 = prog.blocks()[blk].row_offset;
      for (int i = 0; i < env.bounds.rows(); ++i) {
        for (int j = 0; j < dim; ++j) prog.add_entry(r0 + i, j, env.bounds.A()(i, j));
        prog.set_rhs(r0 + i, env.bounds.d()(i));
      }
      auto sol = solve_conic(prog);
      if (sol.status != SolveStatus::OPTIMAL)
        throw std::runtime_error("generate_regions: unbounded workspace");
      if (sign > 0) lo(axis) = sol.primal(axis);
      else hi(axis) = sol.primal(axis);
    }
  }

  std::mt19937_64 rng(rng_seed);
  for (int k = 0; k < n_samples; ++k) {
    Eigen::VectorXd s(dim);
    for (int axis = 0; axis < dim; ++axis) {
      std::uniform_real_distribution<double> u(lo(axis), hi(axis));
      s(axis) = u(rng);
    }
    if (!point_in_hpolytope(env.bounds, s, 0.0)) continue;
    if (env.point_in_any_obstacle(s, params.seed_rejection_tol)) continue;
    if (covered(s)) continue;
    try {
      regions.push_back(inflate_region(s, env, regions, params));
    } catch (const SeedRejected&) {
      // marginal sample; skip it
    }
  }
  return regions;
}

}  // namespace stgcs
