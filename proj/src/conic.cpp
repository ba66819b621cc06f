#include "stgcs/conic.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace stgcs {

//--------------------------------------------------------------------------
// ConicProgram
//--------------------------------------------------------------------------

ConicProgram::ConicProgram(int num_vars) : num_vars_(num_vars) {
  if (num_vars <= 0) throw std::invalid_argument("conic: num_vars must be positive");
  c_ = Eigen::VectorXd::Zero(num_vars);
  h_.resize(0);
}

void ConicProgram::set_objective(int var, double coeff) {
  if (var < 0 || var >= num_vars_) throw std::invalid_argument("conic: objective var out of range");
  if (!std::isfinite(coeff)) throw std::invalid_argument("conic: objective coeff not finite");
  c_(var) = coeff;
}

int ConicProgram::add_block(ConeTag cone, int rows) {
  if (rows <= 0) throw std::invalid_argument("conic: block must have positive rows");
  if (cone == ConeTag::SOC && rows < 2)
    throw std::invalid_argument("conic: SOC block needs at least 2 rows");
  ConstraintBlock blk;
  blk.cone = cone;
  blk.row_offset = num_rows();
  blk.rows = rows;
  blocks_.push_back(blk);
  h_.conservativeResize(blk.row_offset + rows);
  h_.tail(rows).setZero();
  return static_cast<int>(blocks_.size()) - 1;
}

void ConicProgram::add_entry(int global_row, int var, double value) {
  if (global_row < 0 || global_row >= num_rows())
    throw std::invalid_argument("conic: row out of range");
  if (var < 0 || var >= num_vars_) throw std::invalid_argument("conic: var out of range");
  if (!std::isfinite(value)) throw std::invalid_argument("conic: entry not finite");
  if (value == 0.0) return;
  entries_.emplace_back(global_row, var, value);
}

void ConicProgram::set_rhs(int global_row, double value) {
  if (global_row < 0 || global_row >= num_rows())
    throw std::invalid_argument("conic: rhs row out of range");
  if (!std::isfinite(value)) throw std::invalid_argument("conic: rhs not finite");
  h_(global_row) = value;
}

void ConicProgram::dump(std::ostream& os) const {
  os << "vars " << num_vars_ << "\n";
  for (int i = 0; i < num_vars_; ++i)
    if (c_(i) != 0.0) os << "objective " << i << " " << c_(i) << "\n";
  for (size_t b = 0; b < blocks_.size(); ++b) {
    const char* tag = blocks_[b].cone == ConeTag::ZERO     ? "ZERO"
                      : blocks_[b].cone == ConeTag::NONNEG ? "NONNEG"
                                                           : "SOC";
    os << "block " << b << " " << tag << " " << blocks_[b].rows << "\n";
  }
  for (const auto& t : entries_) {
    // locate owning block by row
    int blk = 0;
    while (blk + 1 < static_cast<int>(blocks_.size()) &&
           blocks_[blk + 1].row_offset <= t.row())
      ++blk;
    os << "entry " << blk << " " << (t.row() - blocks_[blk].row_offset) << " " << t.col()
       << " " << t.value() << "\n";
  }
  for (size_t b = 0; b < blocks_.size(); ++b)
    for (int r = 0; r < blocks_[b].rows; ++r) {
      double v = h_(blocks_[b].row_offset + r);
      if (v != 0.0) os << "rhs " << b << " " << r << " " << v << "\n";
    }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::OPTIMAL: return "OPTIMAL";
    case SolveStatus::INFEASIBLE: return "INFEASIBLE";
    case SolveStatus::UNBOUNDED: return "UNBOUNDED";
    case SolveStatus::NUMERICAL_ERROR: return "NUMERICAL_ERROR";
  }
  return "UNKNOWN";
}

//--------------------------------------------------------------------------
// Interior-point solver: homogeneous self-dual embedding with
// Nesterov-Todd scaling and a predictor-corrector step.
//
//   minimize c'x   s.t.  A x = b,  G x + s = h,  s in K
//
// K = R+^l x SOC(q_1) x ... x SOC(q_k). The embedding tracks
// (x, y, z, s, tau, kappa); tau/kappa separate optimal, infeasible and
// unbounded outcomes.
//--------------------------------------------------------------------------

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ConeLayout {
  int l = 0;             // nonnegative rows at the front
  std::vector<int> soc;  // SOC sizes, in order
  int m = 0;
  int degree() const { return l + static_cast<int>(soc.size()); }
};

struct SplitProgram {
  int n = 0;
  SpMat A;  // p x n
  Vec b;
  SpMat G;  // m x n
  Vec h;
  ConeLayout cones;
};

SplitProgram split_program(const ConicProgram& prog) {
  SplitProgram sp;
  sp.n = prog.num_vars();
  int p = 0, l = 0, msoc = 0;
  for (const auto& blk : prog.blocks()) {
    if (blk.cone == ConeTag::ZERO) p += blk.rows;
    else if (blk.cone == ConeTag::NONNEG) l += blk.rows;
    else msoc += blk.rows;
  }
  sp.cones.l = l;
  sp.cones.m = l + msoc;

  // global row -> (is_eq, local row); NONNEG rows first in G, SOC blocks after
  std::vector<char> is_eq(prog.num_rows());
  std::vector<int> local(prog.num_rows());
  int eq_at = 0, lin_at = 0, soc_at = l;
  for (const auto& blk : prog.blocks()) {
    for (int r = 0; r < blk.rows; ++r) {
      int g = blk.row_offset + r;
      if (blk.cone == ConeTag::ZERO) {
        is_eq[g] = 1;
        local[g] = eq_at++;
      } else if (blk.cone == ConeTag::NONNEG) {
        is_eq[g] = 0;
        local[g] = lin_at++;
      } else {
        is_eq[g] = 0;
        local[g] = soc_at + r;
      }
    }
    if (blk.cone == ConeTag::SOC) {
      sp.cones.soc.push_back(blk.rows);
      soc_at += blk.rows;
    }
  }

  std::vector<Triplet> ta, tg;
  for (const auto& t : prog.entries()) {
    if (is_eq[t.row()]) ta.emplace_back(local[t.row()], t.col(), t.value());
    else tg.emplace_back(local[t.row()], t.col(), t.value());
  }
  sp.A.resize(p, sp.n);
  sp.A.setFromTriplets(ta.begin(), ta.end());
  sp.G.resize(sp.cones.m, sp.n);
  sp.G.setFromTriplets(tg.begin(), tg.end());

  sp.b.resize(p);
  sp.h.resize(sp.cones.m);
  const Vec& rhs = prog.rhs();
  for (int g = 0; g < prog.num_rows(); ++g) {
    if (is_eq[g]) sp.b(local[g]) = rhs(g);
    else sp.h(local[g]) = rhs(g);
  }
  return sp;
}

// Largest alpha >= 0 with u + alpha*du staying in the cone; kInf if interior
// for all alpha. u must be strictly interior.
double max_step(const Vec& u, const Vec& du, const ConeLayout& cones) {
  double alpha = kInf;
  for (int i = 0; i < cones.l; ++i)
    if (du(i) < 0.0) alpha = std::min(alpha, -u(i) / du(i));
  int at = cones.l;
  for (int q : cones.soc) {
    const auto u0 = u(at);
    const auto d0 = du(at);
    const auto u1 = u.segment(at + 1, q - 1);
    const auto d1 = du.segment(at + 1, q - 1);
    // roots of (u0+a d0)^2 - |u1+a d1|^2 = 0
    double a = d0 * d0 - d1.squaredNorm();
    double b = 2.0 * (u0 * d0 - u1.dot(d1));
    double c = u0 * u0 - u1.squaredNorm();
    double r = kInf;
    if (std::abs(a) < 1e-14) {
      if (b < 0.0) r = -c / b;
    } else {
      double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        double r1 = (-b - sq) / (2.0 * a);
        double r2 = (-b + sq) / (2.0 * a);
        if (r1 > r2) std::swap(r1, r2);
        if (r1 > 0.0) r = r1;
        else if (r2 > 0.0 && a < 0.0) r = r2;
      } else if (a < 0.0) {
        r = 0.0;  // concave with no real roots cannot happen from interior
      }
    }
    if (r < alpha) alpha = r;
    at += q;
  }
  return alpha;
}

// Shifts v onto the central ray until strictly interior: v + (1+viol)*e.
void bring_interior(Vec& v, const ConeLayout& cones) {
  double viol = -kInf;
  for (int i = 0; i < cones.l; ++i) viol = std::max(viol, -v(i));
  int at = cones.l;
  for (int q : cones.soc) {
    viol = std::max(viol, v.segment(at + 1, q - 1).norm() - v(at));
    at += q;
  }
  if (viol >= -1e-10) {
    double shift = 1.0 + viol;
    for (int i = 0; i < cones.l; ++i) v(i) += shift;
    at = cones.l;
    for (int q : cones.soc) {
      v(at) += shift;
      at += q;
    }
  }
}

// Jordan product u o v per cone part.
Vec jordan_product(const Vec& u, const Vec& v, const ConeLayout& cones) {
  Vec out(cones.m);
  for (int i = 0; i < cones.l; ++i) out(i) = u(i) * v(i);
  int at = cones.l;
  for (int q : cones.soc) {
    const auto u1 = u.segment(at + 1, q - 1);
    const auto v1 = v.segment(at + 1, q - 1);
    out(at) = u(at) * v(at) + u1.dot(v1);
    out.segment(at + 1, q - 1) = u(at) * v1 + v(at) * u1;
    at += q;
  }
  return out;
}

// Solves lambda o u = v for u (inverse of the arrow operator).
Vec jordan_solve(const Vec& lambda, const Vec& v, const ConeLayout& cones) {
  Vec out(cones.m);
  for (int i = 0; i < cones.l; ++i) out(i) = v(i) / lambda(i);
  int at = cones.l;
  for (int q : cones.soc) {
    double l0 = lambda(at);
    const auto l1 = lambda.segment(at + 1, q - 1);
    double den = l0 * l0 - l1.squaredNorm();
    double u0 = (l0 * v(at) - l1.dot(v.segment(at + 1, q - 1))) / den;
    out(at) = u0;
    out.segment(at + 1, q - 1) = (v.segment(at + 1, q - 1) - u0 * l1) / l0;
    at += q;
  }
  return out;
}

// Nesterov-Todd scaling point. W is symmetric; lambda = W z = W^{-1} s.
struct Scaling {
  Vec w_lp;  // sqrt(s_i / z_i)
  struct Soc {
    double eta;
    Vec wbar;
  };
  std::vector<Soc> socs;
  Vec lambda;
};

bool compute_scaling(const Vec& s, const Vec& z, const ConeLayout& cones, Scaling& sc) {
  sc.w_lp.resize(cones.l);
  for (int i = 0; i < cones.l; ++i) {
    if (s(i) <= 0.0 || z(i) <= 0.0) return false;
    sc.w_lp(i) = std::sqrt(s(i) / z(i));
  }
  sc.socs.clear();
  int at = cones.l;
  for (int q : cones.soc) {
    double s0 = s(at), z0 = z(at);
    const auto s1 = s.segment(at + 1, q - 1);
    const auto z1 = z.segment(at + 1, q - 1);
    double ns2 = s0 * s0 - s1.squaredNorm();
    double nz2 = z0 * z0 - z1.squaredNorm();
    if (ns2 <= 0.0 || nz2 <= 0.0 || s0 <= 0.0 || z0 <= 0.0) return false;
    double ns = std::sqrt(ns2), nz = std::sqrt(nz2);
    Vec sb = s.segment(at, q) / ns;
    Vec zb = z.segment(at, q) / nz;
    double gamma = std::sqrt((1.0 + sb.dot(zb)) / 2.0);
    Scaling::Soc soc;
    soc.eta = std::sqrt(ns / nz);
    soc.wbar.resize(q);
    soc.wbar(0) = (sb(0) + zb(0)) / (2.0 * gamma);
    soc.wbar.tail(q - 1) = (sb.tail(q - 1) - zb.tail(q - 1)) / (2.0 * gamma);
    sc.socs.push_back(std::move(soc));
    at += q;
  }
  return true;
}

Vec apply_W(const Scaling& sc, const Vec& v, const ConeLayout& cones) {
  Vec out(cones.m);
  for (int i = 0; i < cones.l; ++i) out(i) = sc.w_lp(i) * v(i);
  int at = cones.l;
  for (size_t k = 0; k < cones.soc.size(); ++k) {
    int q = cones.soc[k];
    const auto& w = sc.socs[k].wbar;
    double eta = sc.socs[k].eta;
    double v0 = v(at);
    const auto v1 = v.segment(at + 1, q - 1);
    double wv = w.tail(q - 1).dot(v1);
    out(at) = eta * (w(0) * v0 + wv);
    out.segment(at + 1, q - 1) = eta * (v1 + (v0 + wv / (1.0 + w(0))) * w.tail(q - 1));
    at += q;
  }
  return out;
}

Vec apply_Winv(const Scaling& sc, const Vec& v, const ConeLayout& cones) {
  Vec out(cones.m);
  for (int i = 0; i < cones.l; ++i) out(i) = v(i) / sc.w_lp(i);
  int at = cones.l;
  for (size_t k = 0; k < cones.soc.size(); ++k) {
    int q = cones.soc[k];
    const auto& w = sc.socs[k].wbar;
    double eta = sc.socs[k].eta;
    double v0 = v(at);
    const auto v1 = v.segment(at + 1, q - 1);
    double wv = w.tail(q - 1).dot(v1);
    out(at) = (w(0) * v0 - wv) / eta;
    out.segment(at + 1, q - 1) = (v1 + (-v0 + wv / (1.0 + w(0))) * w.tail(q - 1)) / eta;
    at += q;
  }
  return out;
}

// KKT system
//   [ dI   A'        G'      ] [dx]
//   [ A   -dI        0       ] [dy]
//   [ G    0   -(W'W) - dI   ] [dz]
// factored with LDLT; solves are refined against the unregularized matrix.
class KktSolver {
 public:
  KktSolver(const SplitProgram& sp) : sp_(sp) {
    n_ = sp.n;
    p_ = sp.A.rows();
    m_ = sp.G.rows();
    dim_ = n_ + p_ + m_;
  }

  bool factorize(const Scaling& sc, bool identity_scaling, double delta) {
    std::vector<Triplet> trips;
    trips.reserve(sp_.A.nonZeros() * 2 + sp_.G.nonZeros() * 2 + dim_ + m_ * 4);
    for (int i = 0; i < n_; ++i) trips.emplace_back(i, i, delta);
    for (int k = 0; k < sp_.A.outerSize(); ++k)
      for (SpMat::InnerIterator it(sp_.A, k); it; ++it) {
        trips.emplace_back(n_ + it.row(), it.col(), it.value());
        trips.emplace_back(it.col(), n_ + it.row(), it.value());
      }
    for (int i = 0; i < p_; ++i) trips.emplace_back(n_ + i, n_ + i, -delta);
    for (int k = 0; k < sp_.G.outerSize(); ++k)
      for (SpMat::InnerIterator it(sp_.G, k); it; ++it) {
        trips.emplace_back(n_ + p_ + it.row(), it.col(), it.value());
        trips.emplace_back(it.col(), n_ + p_ + it.row(), it.value());
      }
    // -(W'W) block; the dense SOC pattern is emitted even for the identity
    // scaling so the symbolic factorization stays valid across iterations.
    const int zoff = n_ + p_;
    for (int i = 0; i < sp_.cones.l; ++i) {
      double w2 = identity_scaling ? 1.0 : sc.w_lp(i) * sc.w_lp(i);
      trips.emplace_back(zoff + i, zoff + i, -w2 - delta);
    }
    int at = sp_.cones.l;
    for (size_t k = 0; k < sp_.cones.soc.size(); ++k) {
      int q = sp_.cones.soc[k];
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          double wij;
          if (identity_scaling) {
            wij = (i == j) ? 1.0 : 0.0;
          } else {
            const auto& w = sc.socs[k].wbar;
            double e2 = sc.socs[k].eta * sc.socs[k].eta;
            wij = e2 * (2.0 * w(i) * w(j) + ((i != j) ? 0.0 : (i == 0 ? -1.0 : 1.0)));
          }
          double val = -wij;
          if (i == j) val -= delta;
          trips.emplace_back(zoff + at + i, zoff + at + j, val);
        }
      at += q;
    }
    SpMat K(dim_, dim_);
    K.setFromTriplets(trips.begin(), trips.end());
    K_ = K;

    // unregularized copy for refinement residuals
    std::vector<Triplet> trips0;
    trips0.reserve(trips.size());
    for (const auto& t : trips) {
      double v = t.value();
      if (t.row() == t.col()) {
        if (t.row() < n_) v -= delta;
        else v += delta;
      }
      if (v != 0.0) trips0.emplace_back(t.row(), t.col(), v);
    }
    SpMat K0(dim_, dim_);
    K0.setFromTriplets(trips0.begin(), trips0.end());
    K0_ = K0;

    if (!analyzed_) {
      ldlt_.analyzePattern(K_);
      analyzed_ = true;
    }
    ldlt_.factorize(K_);
    return ldlt_.info() == Eigen::Success;
  }

  Vec solve(const Vec& rhs) const {
    Vec x = ldlt_.solve(rhs);
    Vec res = rhs - K0_ * x;
    double rn = res.lpNorm<Eigen::Infinity>();
    for (int pass = 0; pass < 8 && rn >= 1e-14; ++pass) {
      Vec x2 = x + ldlt_.solve(res);
      Vec res2 = rhs - K0_ * x2;
      double rn2 = res2.lpNorm<Eigen::Infinity>();
      if (rn2 >= rn) break;
      x = std::move(x2);
      res = std::move(res2);
      rn = rn2;
    }
    return x;
  }

  int n() const { return n_; }
  int p() const { return p_; }
  int m() const { return m_; }

 private:
  const SplitProgram& sp_;
  int n_, p_, m_, dim_;
  SpMat K_, K0_;
  Eigen::SimplicialLDLT<SpMat> ldlt_;
  bool analyzed_ = false;
};

struct Residuals {
  Vec r1;  // A'y + G'z + c*tau
  Vec r2;  // -A x + b*tau
  Vec r3;  // -G x + h*tau - s
  double r4 = 0.0;  // -c'x - b'y - h'z - kappa
};

}  // namespace

ConicSolution solve_conic(const ConicProgram& prog, const SolveTolerances& tols) {
  const auto t_start = std::chrono::steady_clock::now();
  ConicSolution sol;
  sol.objective_value = std::numeric_limits<double>::quiet_NaN();

  SplitProgram sp = split_program(prog);
  const int n = sp.n;
  const int p = static_cast<int>(sp.A.rows());
  const int m = sp.cones.m;
  const ConeLayout& cones = sp.cones;
  const Vec c = prog.objective();

  const double nrm_c = std::max(1.0, c.norm());
  const double nrm_b = std::max(1.0, sp.b.norm());
  const double nrm_h = std::max(1.0, sp.h.norm());

  KktSolver kkt(sp);
  Scaling sc;

  // Initial point: two solves with identity scaling, then shift s and z
  // into the cone interior.
  double delta = 1e-9;
  bool ok = false;
  for (int tries = 0; tries < 4 && !ok; ++tries, delta *= 100.0)
    ok = kkt.factorize(sc, /*identity=*/true, delta);
  if (!ok) return sol;

  Vec x, y, z, s;
  {
    Vec rhs1(n + p + m);
    rhs1.setZero();
    rhs1.segment(n, p) = sp.b;
    rhs1.segment(n + p, m) = sp.h;
    Vec u = kkt.solve(rhs1);
    x = u.head(n);
    s = -u.segment(n + p, m);
    bring_interior(s, cones);

    Vec rhs2(n + p + m);
    rhs2.setZero();
    rhs2.head(n) = -c;
    Vec v = kkt.solve(rhs2);
    y = v.segment(n, p);
    z = v.segment(n + p, m);
    bring_interior(z, cones);
  }
  double tau = 1.0, kappa = 1.0;

  const int degree = cones.degree() + 1;
  double best_metric = kInf;
  Vec best_x;
  double best_obj = 0.0;

  for (int iter = 0; iter <= tols.max_iterations; ++iter) {
    // residuals
    Residuals R;
    R.r1 = sp.A.transpose() * y + sp.G.transpose() * z + c * tau;
    R.r2 = -(sp.A * x) + sp.b * tau;
    R.r3 = -(sp.G * x) + sp.h * tau - s;
    R.r4 = -c.dot(x) - sp.b.dot(y) - sp.h.dot(z) - kappa;

    const double pres = std::max((p > 0 ? R.r2.norm() / nrm_b : 0.0), R.r3.norm() / nrm_h) / tau;
    const double dres = R.r1.norm() / nrm_c / tau;
    const double pcost = c.dot(x) / tau;
    const double dcost = -(sp.b.dot(y) + sp.h.dot(z)) / tau;
    const double gap = (m > 0 ? s.dot(z) : 0.0) / (tau * tau);
    const double relgap = gap / std::max({1.0, std::abs(pcost), std::abs(dcost)});

    const double metric = std::max({pres, dres, relgap});
    if (metric < best_metric) {
      best_metric = metric;
      best_x = x / tau;
      best_obj = pcost;
    }

    if (pres <= tols.feas && dres <= tols.feas && relgap <= tols.gap) {
      sol.status = SolveStatus::OPTIMAL;
      sol.primal = x / tau;
      sol.objective_value = c.dot(sol.primal);
      sol.iterations = iter;
      sol.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
      return sol;
    }

    // certificates
    const double cert_p = -(sp.b.dot(y) + sp.h.dot(z));
    if (cert_p > 1e-12) {
      double infres = (sp.A.transpose() * y + sp.G.transpose() * z).norm() / nrm_c / cert_p;
      if (infres <= tols.feas) {
        sol.status = SolveStatus::INFEASIBLE;
        sol.iterations = iter;
        sol.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return sol;
      }
    }
    const double cert_d = -c.dot(x);
    if (cert_d > 1e-12) {
      double ares = (p > 0 ? (sp.A * x).norm() / nrm_b : 0.0);
      double gres = (sp.G * x + s).norm() / nrm_h;
      if (std::max(ares, gres) / cert_d <= tols.feas) {
        sol.status = SolveStatus::UNBOUNDED;
        sol.iterations = iter;
        sol.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return sol;
      }
    }

    if (iter == tols.max_iterations) break;

    const double mu = ((m > 0 ? s.dot(z) : 0.0) + tau * kappa) / degree;

    if (!compute_scaling(s, z, cones, sc)) break;
    Vec lambda = apply_W(sc, z, cones);

    delta = 1e-9;
    ok = false;
    for (int tries = 0; tries < 4 && !ok; ++tries, delta *= 100.0)
      ok = kkt.factorize(sc, /*identity=*/false, delta);
    if (!ok) break;

    // tau column
    Vec rhs_tau(n + p + m);
    rhs_tau.head(n) = -c;
    rhs_tau.segment(n, p) = sp.b;
    rhs_tau.segment(n + p, m) = sp.h;
    Vec t1 = kkt.solve(rhs_tau);
    const double dot3_t1 = c.dot(t1.head(n)) + sp.b.dot(t1.segment(n, p)) + sp.h.dot(t1.segment(n + p, m));

    auto take_step = [&](double sigma, const Vec& bs, double dk, Vec& dx, Vec& dy, Vec& dz,
                         Vec& ds, double& dtau, double& dkappa) {
      const double f = 1.0 - sigma;
      Vec rhs(n + p + m);
      rhs.head(n) = -f * R.r1;
      rhs.segment(n, p) = f * R.r2;
      rhs.segment(n + p, m) = f * R.r3 - apply_W(sc, bs, cones);
      Vec t2 = kkt.solve(rhs);
      const double dot3_t2 = c.dot(t2.head(n)) + sp.b.dot(t2.segment(n, p)) + sp.h.dot(t2.segment(n + p, m));
      const double denom = kappa - tau * dot3_t1;
      dtau = (dk - tau * f * R.r4 + tau * dot3_t2) / denom;
      dx = t2.head(n) + dtau * t1.head(n);
      dy = t2.segment(n, p) + dtau * t1.segment(n, p);
      dz = t2.segment(n + p, m) + dtau * t1.segment(n + p, m);
      ds = apply_W(sc, Vec(bs - apply_W(sc, dz, cones)), cones);
      dkappa = (dk - kappa * dtau) / tau;
    };

    // predictor
    Vec dxa, dya, dza, dsa;
    double dtaua, dkappaa;
    {
      Vec bs = -lambda;
      take_step(0.0, bs, -tau * kappa, dxa, dya, dza, dsa, dtaua, dkappaa);
    }
    double alpha_aff = std::min({max_step(s, dsa, cones), max_step(z, dza, cones),
                                 dtaua < 0 ? -tau / dtaua : kInf,
                                 dkappaa < 0 ? -kappa / dkappaa : kInf, 1.0});
    double sigma = std::pow(1.0 - alpha_aff, 3.0);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // corrector
    Vec dx, dy, dz, ds;
    double dtau, dkappa;
    {
      Vec Wdz = apply_W(sc, dza, cones);
      Vec Winv_ds = apply_Winv(sc, dsa, cones);
      Vec gamma_corr = jordan_product(Wdz, Winv_ds, cones);
      Vec dsvec = -jordan_product(lambda, lambda, cones) - gamma_corr;
      for (int i = 0; i < cones.l; ++i) dsvec(i) += sigma * mu;
      int at = cones.l;
      for (int q : cones.soc) {
        dsvec(at) += sigma * mu;
        at += q;
      }
      Vec bs = jordan_solve(lambda, dsvec, cones);
      double dk = sigma * mu - tau * kappa - dtaua * dkappaa;
      take_step(sigma, bs, dk, dx, dy, dz, ds, dtau, dkappa);
    }

    double alpha = std::min({max_step(s, ds, cones), max_step(z, dz, cones),
                             dtau < 0 ? -tau / dtau : kInf, dkappa < 0 ? -kappa / dkappa : kInf});
    alpha = std::min(1.0, 0.99 * alpha);
    if (!std::isfinite(alpha) || alpha <= 0.0) break;

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;
    if (tau <= 0.0 || kappa <= 0.0) break;
  }

  sol.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  // Accept a near-converged iterate within 10x of the requested tolerances.
  if (best_metric <= 10.0 * std::max(tols.feas, tols.gap)) {
    sol.status = SolveStatus::OPTIMAL;
    sol.primal = best_x;
    sol.objective_value = best_obj;
    return sol;
  }
  sol.status = SolveStatus::NUMERICAL_ERROR;
  return sol;
}

}  // namespace stgcs
