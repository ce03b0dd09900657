// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "shrinklp/matrix.hpp"

namespace shrinklp {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(SolveStatus status);

/// Dense bounded revised simplex for   max c'x  s.t.  Ax <= b, x >= 0.
///
/// Maintains an explicit basis inverse with periodic refactorization and a
/// Dantzig/Bland hybrid pivot rule (Bland kicks in after a degenerate stall,
/// guaranteeing termination). Rows can be appended after an optimal solve
/// (`add_cut`), which keeps the basis dual-feasible; `reoptimize` then runs
/// the dual simplex, so outer cutting-plane loops restart cheaply.
///
/// Everything is deterministic: identical inputs and call sequences produce
/// bit-identical iterates. `work()` accumulates a flop-count proxy of the
/// effort spent, which downstream timing reports can use in place of
/// wall-clock time.
class SimplexSolver {
 public:
  SimplexSolver(const DenseMatrix& a, const std::vector<double>& b,
                const std::vector<double>& cost, long max_iterations = 0);

  /// Full solve from the slack basis (phase 1 only if some rhs < 0).
  SolveStatus solve();

  /// Appends the row coeffs'x <= rhs. Only valid after an optimal solve;
  /// the new slack enters the basis and primal feasibility may be lost.
  void add_cut(const std::vector<double>& coeffs, double rhs);

  /// Dual-simplex reoptimization after one or more add_cut calls. The
  /// cheap path skips the final certificate; call `certify` once the outer
  /// loop believes it has converged.
  SolveStatus reoptimize(bool certify = false);

  /// Refactorizes and re-checks feasibility, pricing and the duality gap,
  /// resuming pivots if roundoff left anything profitable.
  SolveStatus certify_optimal();

  /// Values of the structural variables (length = #cols of A).
  std::vector<double> structural_solution() const;

  double objective() const;
  long iterations() const { return iterations_; }
  double work() const { return work_; }
  int row_count() const { return num_rows_; }

 private:
  enum class ColKind { kStructural, kSlack, kArtificial };
  struct Column {
    ColKind kind;
    int index;  // structural: variable; slack/artificial: row
  };

  // Problem data in equality form. Rows with negative rhs are stored
  // negated with slack sign -1 so every rhs is nonnegative at the start.
  int num_rows_ = 0;
  int num_struct_ = 0;
  std::vector<std::vector<double>> row_coeffs_;  // per row, structural part
  std::vector<double> rhs_;
  std::vector<double> slack_sign_;
  std::vector<double> struct_cost_;
  std::vector<Column> columns_;
  int first_artificial_ = -1;  // columns_ index; -1 if none

  std::vector<int> basis_;            // column id per row
  std::vector<char> in_basis_;        // per column id
  std::vector<std::vector<double>> binv_;
  std::vector<double> basic_values_;

  long iterations_ = 0;
  long max_iterations_ = 0;
  long pivots_since_refactor_ = 0;
  double work_ = 0.0;

  double column_entry(int col, int row) const;
  void column_vector(int col, std::vector<double>& out) const;
  void ftran(int col, std::vector<double>& w) const;
  void compute_duals(const std::vector<double>& phase_cost,
                     std::vector<double>& y) const;
  double phase_cost_of(int col, const std::vector<double>& cost) const;
  void pivot(int leave_row, int enter_col, const std::vector<double>& w);
  bool refactor();
  void recompute_basic_values();
  SolveStatus primal_loop(const std::vector<double>& phase_cost,
                          bool allow_artificial);
  SolveStatus dual_loop(const std::vector<double>& phase_cost);
  std::vector<double> phase2_cost() const;
  bool verify_optimal(const std::vector<double>& phase_cost);
  long iteration_budget() const;
};

}  // namespace shrinklp
