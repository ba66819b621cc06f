#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>
#include <vector>

namespace stgcs {

// Cone tags for constraint blocks of a standard-form conic program.
//   ZERO    : G x + s = h with s = 0            (equality rows)
//   NONNEG  : G x + s = h with s >= 0           (inequality rows, G x <= h)
//   SOC     : G x + s = h with s in Q_k, i.e. s0 >= ||s1..k-1||_2
enum class ConeTag { ZERO, NONNEG, SOC };

struct ConstraintBlock {
  ConeTag cone;
  int row_offset = 0;  // first global row of this block
  int rows = 0;
};

// Standard-form conic program
//   minimize    c' x
//   subject to  G_b x + s_b = h_b,  s_b in cone(b)   for each block b
//
// Rows are stored globally; blocks partition [0, num_rows) in order.
class ConicProgram {
 public:
  explicit ConicProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(h_.size()); }

  void set_objective(int var, double coeff);
  const Eigen::VectorXd& objective() const { return c_; }

  // Appends an empty block of `rows` rows, returns the block index.
  // SOC blocks require rows >= 2.
  int add_block(ConeTag cone, int rows);
  // Adds G[row, var] += value for a global row index.
  void add_entry(int global_row, int var, double value);
  void set_rhs(int global_row, double value);

  const std::vector<ConstraintBlock>& blocks() const { return blocks_; }
  const std::vector<Eigen::Triplet<double>>& entries() const { return entries_; }
  const Eigen::VectorXd& rhs() const { return h_; }

  // Sparse-triplet text dump: `vars`, `objective`, `block`, `entry` and
  // `rhs` records, one line per nonzero.
  void dump(std::ostream& os) const;

 private:
  int num_vars_;
  Eigen::VectorXd c_;
  std::vector<ConstraintBlock> blocks_;
  std::vector<Eigen::Triplet<double>> entries_;
  Eigen::VectorXd h_;
};

enum class SolveStatus { OPTIMAL, INFEASIBLE, UNBOUNDED, NUMERICAL_ERROR };

const char* to_string(SolveStatus s);

struct SolveTolerances {
  double feas = 1e-8;     // primal/dual feasibility
  double gap = 1e-8;      // relative duality gap
  int max_iterations = 100;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::NUMERICAL_ERROR;
  Eigen::VectorXd primal;      // present iff status == OPTIMAL
  double objective_value = 0.0;
  double solve_time = 0.0;     // seconds
  int iterations = 0;
};

// Interior-point solve of the program. Deterministic for fixed inputs and
// reentrant; concurrent calls on distinct programs are safe.
ConicSolution solve_conic(const ConicProgram& p,
                          const SolveTolerances& tols = SolveTolerances());

}  // namespace stgcs
