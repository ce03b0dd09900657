// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "shrinklp/matrix_io.hpp"

namespace shrinklp {

namespace {

void require_conforming(const DenseMatrix& a, const std::vector<double>& b,
                        const std::vector<double>& cost, const char* op) {
  if (static_cast<int>(b.size()) != a.rows()) {
    throw DimensionError(std::string(op) + ": b length " +
                         std::to_string(b.size()) + " != rows " +
                         std::to_string(a.rows()));
  }
  if (static_cast<int>(cost.size()) != a.cols()) {
    throw DimensionError(std::string(op) + ": cost length " +
                         std::to_string(cost.size()) + " != cols " +
                         std::to_string(a.cols()));
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw ConstructionError("non-finite rhs entry");
  }
  for (double v : cost) {
    if (!std::isfinite(v)) throw ConstructionError("non-finite cost entry");
  }
}

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void dump_debug(const ConstrainedProblem& problem, const Solution& solution,
                const SolverOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.debug_dump_dir);
  const std::string stem =
      (fs::path(options.debug_dump_dir) / options.debug_label).string();
  write_matrix_csv(problem.a, stem + "_A.csv");
  write_vector_csv(problem.b, stem + "_b.csv");
  write_vector_csv(problem.cost, stem + "_cost.csv");
  nlohmann::json j;
  j["status"] = to_string(solution.status);
  j["objective"] = solution.objective;
  j["iterations"] = solution.iterations;
  j["cutting_planes_added"] = solution.cutting_planes_added;
  j["robust_radius"] = problem.robust_radius;
  j["x"] = solution.x;
  std::ofstream out(stem + "_solution.json", std::ios::binary);
  out << j.dump(2) << '\n';
}

// Barrier solve of  max c'x  s.t.  a_i'x + gamma*n(x) <= b_i, x >= 0  with
// the smoothed norm n(x) = sqrt(||x||^2 + eps^2) >= ||x||, so any interior
// iterate is strictly feasible for the true robust constraints. Used when
// the cutting-plane rounds run out: outer linearization of the norm cone
// closes the duality gap only like O(1/rounds) once p is in the hundreds,
// which cannot reach the contract tolerances in any reasonable number of
// rounds. Requires every b_i > 0 (the origin must be interior).
//
// The returned bound pair is rigorous: the primal value comes from a point
// that satisfies the true constraints strictly, and the dual value b'lam is
// certified by checking ||(c - A'lam)_+||_2 <= gamma*1'lam directly (the
// barrier multipliers lam_i = mu/s_i satisfy it up to Newton residual; a
// small uniform scaling absorbs that residual because the data are
// elementwise positive).
struct PolishResult {
  bool ok = false;
  std::vector<double> x;
  double objective = 0.0;
  double upper_bound = std::numeric_limits<double>::infinity();
  long newton_steps = 0;
  double work = 0.0;
};

PolishResult barrier_polish(const ConstrainedProblem& problem,
                            double tol_obj) {
  PolishResult result;
  const int m = problem.a.rows();
  const int p = problem.a.cols();
  const double gamma = problem.robust_radius;
  for (double v : problem.b) {
    if (!(v > 0.0)) return result;
  }
  for (double v : problem.cost) {
    if (v < 0.0) return result;  // upward objective pressure assumed
  }

  std::vector<double> row_sum(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = problem.a.row(i);
    for (int j = 0; j < p; ++j) row_sum[i] += std::max(row[j], 0.0);
  }
  double delta = std::numeric_limits<double>::infinity();
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  for (int i = 0; i < m; ++i) {
    delta = std::min(delta, problem.b[i] / (row_sum[i] + gamma * sqrt_p + 1.0));
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) return result;
  std::vector<double> x(p, 0.5 * delta);
  const double eps = 1e-10 * (1.0 + 0.5 * delta * sqrt_p);

  std::vector<double> slack(m), grad(p), direction(p), trial(p),
      trial_slack(m), weighted_col(p);
  std::vector<double> hess(static_cast<std::size_t>(p) * p);

  const auto eval_slack = [&](const std::vector<double>& point,
                              std::vector<double>& out) {
    double norm_sq = eps * eps;
    for (double v : point) norm_sq += v * v;
    const double n = std::sqrt(norm_sq);
    for (int i = 0; i < m; ++i) {
      out[i] = problem.b[i] - dot(problem.a.row(i), point.data(), p) -
               gamma * n;
      if (!(out[i] > 0.0)) return -1.0;
    }
    return n;
  };
  const auto barrier_value = [&](const std::vector<double>& point,
                                 const std::vector<double>& s) {
    double value = -dot(problem.cost.data(), point.data(), p);
    double logs = 0.0;
    for (double v : s) logs += std::log(v);
    for (double v : point) logs += std::log(v);
    return std::make_pair(value, logs);
  };

  double norm_x = eval_slack(x, slack);
  if (norm_x < 0.0) return result;

  double mu = 0.0;  // start from the average complementarity of x0
  for (double v : slack) mu += v;
  for (double v : x) mu += v;
  mu /= (m + p);
  mu = std::max(mu, 1e-3);

  long newtons = 0;

  // Certified upper bound from the current multipliers lam_i = mu/s_i.
  // Stationarity makes lam dual-feasible for the conic dual up to Newton
  // residual; a uniform scaling kappa >= 1 absorbs that residual since the
  // data are positive. Returns +inf when no scaling works.
  std::vector<double> lambda(m);
  const auto certified_upper = [&]() {
    double lambda_sum = 0.0;
    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) {
      lambda[i] = mu / slack[i];
      lambda_sum += lambda[i];
      dual_obj += lambda[i] * problem.b[i];
    }
    const auto infeasibility = [&](double kappa) {
      double norm_sq = 0.0;
      for (int j = 0; j < p; ++j) {
        double u = problem.cost[j];
        for (int i = 0; i < m; ++i) u -= kappa * lambda[i] * problem.a(i, j);
        if (u > 0.0) norm_sq += u * u;
      }
      return std::sqrt(norm_sq) - kappa * gamma * lambda_sum;
    };
    double kappa = 1.0;
    if (infeasibility(kappa) > 0.0) {
      double hi = 1.0;
      for (int step = 0; step < 60 && infeasibility(hi) > 0.0; ++step) {
        hi *= 1.5;
      }
      if (infeasibility(hi) > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      double lo = 1.0;
      for (int step = 0; step < 60; ++step) {
        const double mid = 0.5 * (lo + hi);
        (infeasibility(mid) > 0.0 ? lo : hi) = mid;
      }
      kappa = hi;
    }
    return kappa * dual_obj;
  };

  while (true) {
    for (int inner = 0; inner < 60; ++inner) {
      const double n = norm_x;
      // grad phi = -c + mu*sum_i g_i/s_i - mu/x, g_i = a_i + gamma*x/n.
      double inv_s_sum = 0.0;
      std::fill(grad.begin(), grad.end(), 0.0);
      for (int i = 0; i < m; ++i) {
        const double w = mu / slack[i];
        inv_s_sum += 1.0 / slack[i];
        const double* row = problem.a.row(i);
        for (int j = 0; j < p; ++j) grad[j] += w * row[j];
      }
      const double d_scale = gamma / n;
      for (int j = 0; j < p; ++j) {
        grad[j] += mu * inv_s_sum * d_scale * x[j];
        grad[j] -= problem.cost[j];
        grad[j] -= mu / x[j];
      }

      // H = mu [ sum g_i g_i'/s_i^2 + gamma*inv_s_sum*(I - dd')/n
      //          + diag(1/x^2) ].
      std::fill(hess.begin(), hess.end(), 0.0);
      for (int i = 0; i < m; ++i) {
        const double w = mu / (slack[i] * slack[i]);
        const double* row = problem.a.row(i);
        for (int j = 0; j < p; ++j) weighted_col[j] = row[j] + d_scale * x[j];
        for (int j = 0; j < p; ++j) {
          const double wj = w * weighted_col[j];
          double* hrow = hess.data() + static_cast<std::size_t>(j) * p;
          for (int k = j; k < p; ++k) hrow[k] += wj * weighted_col[k];
        }
      }
      const double curv = mu * gamma * inv_s_sum / n;
      for (int j = 0; j < p; ++j) {
        double* hrow = hess.data() + static_cast<std::size_t>(j) * p;
        hrow[j] += curv + mu / (x[j] * x[j]);
        const double dj = x[j] / n;
        for (int k = j; k < p; ++k) hrow[k] -= curv * dj * (x[k] / n);
      }
      result.work += static_cast<double>(m) * p * p +
                     static_cast<double>(p) * p * p / 3.0;

      // Cholesky solve H*direction = -grad (upper triangle stored).
      for (int j = 0; j < p; ++j) {
        double* hj = hess.data() + static_cast<std::size_t>(j) * p;
        for (int k = 0; k < j; ++k) {
          const double f = hess[static_cast<std::size_t>(k) * p + j];
          if (f == 0.0) continue;
          const double* hk = hess.data() + static_cast<std::size_t>(k) * p;
          for (int l = j; l < p; ++l) hj[l] -= f * hk[l];
        }
        if (!(hj[j] > 1e-300)) return result;
        const double inv_diag = 1.0 / hj[j];
        const double scale = std::sqrt(inv_diag);
        for (int l = j; l < p; ++l) hj[l] *= scale;
      }
      for (int j = 0; j < p; ++j) direction[j] = -grad[j];
      for (int j = 0; j < p; ++j) {
        double acc = direction[j];
        const std::size_t col = static_cast<std::size_t>(j);
        for (int k = 0; k < j; ++k) {
          acc -= hess[static_cast<std::size_t>(k) * p + j] * direction[k];
        }
        direction[j] = acc / hess[col * p + j];
      }
      for (int j = p - 1; j >= 0; --j) {
        double acc = direction[j];
        const double* hj = hess.data() + static_cast<std::size_t>(j) * p;
        for (int k = j + 1; k < p; ++k) acc -= hj[k] * direction[k];
        direction[j] = acc / hj[j];
      }

      double decrement = 0.0;
      for (int j = 0; j < p; ++j) decrement -= grad[j] * direction[j];
      ++newtons;
      if (decrement <= 2e-9 * mu * (m + p)) break;

      // Backtracking line search on the barrier function.
      const auto [f0_lin, f0_log] = barrier_value(x, slack);
      const double phi0 = f0_lin - mu * f0_log;
      double step = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        bool positive = true;
        for (int j = 0; j < p; ++j) {
          trial[j] = x[j] + step * direction[j];
          if (!(trial[j] > 0.0)) {
            positive = false;
            break;
          }
        }
        if (positive) {
          const double trial_norm = eval_slack(trial, trial_slack);
          if (trial_norm > 0.0) {
            const auto [f_lin, f_log] = barrier_value(trial, trial_slack);
            const double phi = f_lin - mu * f_log;
            if (phi <= phi0 - 0.25 * step * decrement) {
              x = trial;
              slack = trial_slack;
              norm_x = trial_norm;
              moved = true;
              break;
            }
          }
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    const double objective = dot(problem.cost.data(), x.data(), p);
    const double upper = certified_upper();
    if (std::getenv("SHRINKLP_POLISH_DEBUG")) {
      std::fprintf(stderr, "  stage mu=%.3e newtons=%ld obj=%.9f upper=%.9f\n",
                   mu, newtons, objective, upper);
    }
    // The primal value only improves along the path; keep the tightest
    // certified upper bound seen.
    result.x = x;
    result.objective = objective;
    result.upper_bound = std::min(result.upper_bound, upper);
    if (result.upper_bound - objective <=
        0.5 * tol_obj * std::max(1.0, std::fabs(objective))) {
      break;
    }
    if (mu <= 1e-12 * std::max(1.0, std::fabs(objective)) / (m + p)) break;
    mu *= 0.15;
  }
  result.newton_steps = newtons;
  result.ok = std::isfinite(result.upper_bound) && !result.x.empty();
  return result;
}

// Post-hoc certificate on the original data; part of the operation, not the
// caller's tests.
bool certify_lp(const ConstrainedProblem& problem, const Solution& solution,
                double tol) {
  const int p = problem.a.cols();
  for (double v : solution.x) {
    if (v < -tol) return false;
  }
  for (int i = 0; i < problem.a.rows(); ++i) {
    if (dot(problem.a.row(i), solution.x.data(), p) > problem.b[i] + tol) {
      return false;
    }
  }
  return true;
}

}  // namespace

ConstrainedProblem build_nominal(DenseMatrix a_bar, std::vector<double> b,
                                 std::vector<double> cost) {
  require_conforming(a_bar, b, cost, "build_nominal");
  return {std::move(a_bar), std::move(b), std::move(cost), 0.0};
}

ConstrainedProblem build_shrinkage(DenseMatrix a_star, std::vector<double> b,
                                   std::vector<double> cost) {
  require_conforming(a_star, b, cost, "build_shrinkage");
  return {std::move(a_star), std::move(b), std::move(cost), 0.0};
}

double robust_support_value(const std::vector<double>& a_bar_row,
                            const std::vector<double>& x, double gamma) {
  if (a_bar_row.size() != x.size()) {
    throw DimensionError("robust_support_value: length mismatch");
  }
  if (gamma < 0.0) {
    throw std::invalid_argument("robust_support_value: gamma must be >= 0");
  }
  return dot(a_bar_row.data(), x.data(), static_cast<int>(x.size())) +
         gamma * norm2(x);
}

Solution solve_lp(const ConstrainedProblem& problem,
                  const SolverOptions& options) {
  if (problem.robust_radius != 0.0) {
    throw std::invalid_argument("solve_lp: robust_radius must be 0");
  }
  require_conforming(problem.a, problem.b, problem.cost, "solve_lp");

  SimplexSolver simplex(problem.a, problem.b, problem.cost,
                        options.max_iterations);
  Solution solution;
  solution.status = simplex.solve();
  solution.iterations = simplex.iterations();
  solution.work_units = simplex.work();
  if (solution.status == SolveStatus::kOptimal) {
    solution.x = simplex.structural_solution();
    solution.objective =
        dot(problem.cost.data(), solution.x.data(), problem.a.cols());
    if (!certify_lp(problem, solution, options.tol_feas)) {
      solution.status = SolveStatus::kIterationLimit;
      solution.x.clear();
      solution.objective = 0.0;
    }
  }
  if (!options.debug_dump_dir.empty()) dump_debug(problem, solution, options);
  return solution;
}

Solution solve_robust(const ConstrainedProblem& problem,
                      const SolverOptions& options) {
  if (!(problem.robust_radius > 0.0)) {
    throw std::invalid_argument("solve_robust: robust_radius must be > 0");
  }
  require_conforming(problem.a, problem.b, problem.cost, "solve_robust");
  const double gamma = problem.robust_radius;
  const int m = problem.a.rows();
  const int p = problem.a.cols();

  // Outer linearization in epigraph form. With t standing in for ||x||_2,
  // the rows A x + gamma*1*t <= b are exact and only the cone t >= ||x||
  // needs cutting: one support plane d'x <= t per incumbent direction
  // d = x/||x||. Composed with row i this yields exactly the support
  // hyperplane (a_i + gamma*d)'x <= b_i, but a single added row serves
  // every violated constraint at once.
  DenseMatrix extended(m, p + 1);
  for (int i = 0; i < m; ++i) {
    const double* row = problem.a.row(i);
    double* out = extended.row(i);
    for (int j = 0; j < p; ++j) out[j] = row[j];
    out[p] = gamma;
  }
  std::vector<double> cost_ext(problem.cost);
  cost_ext.push_back(0.0);

  SimplexSolver simplex(extended, problem.b, cost_ext, options.max_iterations);
  Solution solution;
  SolveStatus status = simplex.solve();
  int cuts = 0;
  double max_violation = 0.0;

  // The robust left-hand side a_i'x + gamma*||x|| is positively homogeneous
  // in x, so when every b_i >= 0 an infeasible incumbent can be scaled
  // radially onto the feasible set. Together with the (certified) LP
  // relaxation objective this sandwiches the true optimum and lets the
  // loop stop once the feasible point is provably within tol_obj of it.
  bool projectable = true;
  for (double v : problem.b) {
    if (v < 0.0) projectable = false;
  }
  std::vector<double> best_feasible;
  double best_feasible_obj = -std::numeric_limits<double>::infinity();

  if (status == SolveStatus::kOptimal) {
    std::vector<double> cut(p + 1);
    int round = 0;
    int certify_attempts = 0;
    for (;;) {
      std::vector<double> x = simplex.structural_solution();
      x.resize(p);  // drop the epigraph variable
      const double xnorm = norm2(x);
      const double incumbent_obj = dot(problem.cost.data(), x.data(), p);
      max_violation = 0.0;
      double theta = 1.0;
      for (int i = 0; i < m; ++i) {
        const double support =
            dot(problem.a.row(i), x.data(), p) + gamma * xnorm;
        const double v = support - problem.b[i];
        if (v > max_violation) max_violation = v;
        if (support > 0.0) theta = std::min(theta, problem.b[i] / support);
      }
      const bool settled_needed = max_violation <= options.tol_feas;
      bool sandwich_closed = false;
      if (!settled_needed && projectable && theta > 0.0) {
        const double scaled_obj = theta * incumbent_obj;
        if (scaled_obj > best_feasible_obj) {
          best_feasible_obj = scaled_obj;
          best_feasible = x;
          for (double& v : best_feasible) v *= theta;
        }
        sandwich_closed =
            incumbent_obj - best_feasible_obj <=
            0.5 * options.tol_obj * std::max(1.0, std::fabs(best_feasible_obj));
      }
      if (settled_needed || sandwich_closed) {
        // Per-round reoptimizations run uncertified; settle the basis so
        // the relaxation objective is a sound upper bound. If pivots move
        // the solution, loop back and re-evaluate.
        if (++certify_attempts > 5) {
          status = SolveStatus::kIterationLimit;
          break;
        }
        status = simplex.certify_optimal();
        if (status != SolveStatus::kOptimal) break;
        std::vector<double> settled = simplex.structural_solution();
        settled.resize(p);
        if (settled == x) break;
        continue;
      }
      if (round >= options.max_cut_rounds) {
        status = SolveStatus::kIterationLimit;
        break;
      }
      if (xnorm == 0.0) {
        // At the origin the robust row is 0 <= b_i; a violation here means
        // the base LP was inconsistent, which its own solve reports.
        status = SolveStatus::kIterationLimit;
        break;
      }
      for (int j = 0; j < p; ++j) cut[j] = x[j] / xnorm;
      cut[p] = -1.0;
      simplex.add_cut(cut, 0.0);
      ++cuts;
      ++round;
      status = simplex.reoptimize(false);
      if (status != SolveStatus::kOptimal) break;
    }
  }

  long polish_newtons = 0;
  double polish_work = 0.0;
  if (status == SolveStatus::kIterationLimit) {
    // Out of rounds with the duality gap still open; finish the job on the
    // smooth formulation. Its primal iterate is strictly feasible for the
    // true robust rows and its scaled dual multipliers certify the bound.
    const PolishResult polish = barrier_polish(problem, options.tol_obj);
    polish_work = polish.work;
    polish_newtons = polish.newton_steps;
    if (polish.ok &&
        polish.upper_bound - polish.objective <=
            0.9 * options.tol_obj * std::max(1.0, std::fabs(polish.objective))) {
      status = SolveStatus::kOptimal;
      if (polish.objective > best_feasible_obj) {
        best_feasible = polish.x;
        best_feasible_obj = polish.objective;
      }
      max_violation = options.tol_feas + 1.0;  // force the projected branch
    }
  }

  solution.status = status;
  solution.iterations = simplex.iterations() + polish_newtons;
  solution.cutting_planes_added = cuts;
  solution.work_units = simplex.work() + polish_work;
  solution.max_violation = max_violation;
  if (status == SolveStatus::kOptimal) {
    solution.x = simplex.structural_solution();
    solution.x.resize(p);
    solution.objective = dot(problem.cost.data(), solution.x.data(), p);
    if (max_violation > options.tol_feas) {
      // Terminated through the sandwich or the barrier: return the
      // certified feasible point instead of the relaxation incumbent.
      solution.x = best_feasible;
      solution.objective = best_feasible_obj;
    }
    // Certificate: every row must withstand the full uncertainty ball.
    double residual = 0.0;
    for (int i = 0; i < m; ++i) {
      const double support = dot(problem.a.row(i), solution.x.data(), p) +
                             gamma * norm2(solution.x);
      residual = std::max(residual, support - problem.b[i]);
    }
    solution.max_violation = std::max(residual, 0.0);
    if (residual > options.tol_feas) {
      solution.status = SolveStatus::kIterationLimit;
      solution.x.clear();
      solution.objective = 0.0;
    }
    for (double v : solution.x) {
      if (v < -options.tol_feas) {
        solution.status = SolveStatus::kIterationLimit;
        solution.x.clear();
        solution.objective = 0.0;
        break;
      }
    }
  }
  if (!options.debug_dump_dir.empty()) dump_debug(problem, solution, options);
  return solution;
}

}  // namespace shrinklp
