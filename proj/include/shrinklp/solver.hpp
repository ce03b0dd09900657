// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "shrinklp/matrix.hpp"
#include "shrinklp/simplex.hpp"

namespace shrinklp {

/// max cost'x  s.t.  A x <= b, x >= 0, and, when robust_radius > 0, the
/// rows must additionally withstand any L2 perturbation of that radius:
/// a_i'x + robust_radius*||x||_2 <= b_i.
struct ConstrainedProblem {
  DenseMatrix a;
  std::vector<double> b;
  std::vector<double> cost;
  double robust_radius = 0.0;
};

struct Solution {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> x;  // structural values; meaningful iff Optimal
  double objective = 0.0;
  long iterations = 0;
  int cutting_planes_added = 0;
  double max_violation = 0.0;  // residual robust violation at exit
  double work_units = 0.0;     // deterministic effort proxy (~megaflops)
};

struct SolverOptions {
  long max_iterations = 0;  // 0 = automatic budget
  int max_cut_rounds = 200;
  double tol_feas = 1e-7;
  double tol_obj = 1e-5;  // relative objective accuracy for robust solves
  std::string debug_dump_dir;  // when set, dump problem + solution files
  std::string debug_label = "problem";
};

/// Wraps (A, b, cost) as a plain LP; shapes are validated.
ConstrainedProblem build_nominal(DenseMatrix a_bar, std::vector<double> b,
                                 std::vector<double> cost);

/// Identical wrapping for a shrunk matrix.
ConstrainedProblem build_shrinkage(DenseMatrix a_star, std::vector<double> b,
                                   std::vector<double> cost);

/// max over ||delta||_2 <= gamma of (a_bar + delta)'x, which is
/// a_bar'x + gamma*||x||_2.
double robust_support_value(const std::vector<double>& a_bar_row,
                            const std::vector<double>& x, double gamma);

/// Solves the pure LP (robust_radius must be 0). Optimal solutions are
/// re-checked against the original data within tol_feas before returning;
/// a failed certificate is reported as IterationLimit.
Solution solve_lp(const ConstrainedProblem& problem,
                  const SolverOptions& options = {});

/// Solves the robust counterpart (robust_radius must be > 0) by outer
/// linearization: solve the LP relaxation, and while some row violates
/// a_i'x + gamma*||x|| <= b_i by more than tol_feas, add the supporting
/// hyperplane of the norm cone at the incumbent direction (equivalent to
/// cutting every violated row with (a_i + gamma*x/||x||)'x <= b_i at once)
/// and reoptimize. Because the robust left-hand side is homogeneous in x,
/// infeasible incumbents also yield feasible radial projections; the loop
/// stops early when such a point is within tol_obj of the certified
/// relaxation bound, returning it instead. At the origin the robust row
/// reduces to 0 <= b_i and no cut exists, so cut generation is skipped
/// there. Hitting max_cut_rounds returns IterationLimit with the residual
/// violation in max_violation.
Solution solve_robust(const ConstrainedProblem& problem,
                      const SolverOptions& options = {});

}  // namespace shrinklp
