// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace shrinklp {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kDegenerateStep = 1e-11;
constexpr long kRefactorInterval = 128;

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

SimplexSolver::SimplexSolver(const DenseMatrix& a, const std::vector<double>& b,
                             const std::vector<double>& cost,
                             long max_iterations)
    : num_rows_(a.rows()), num_struct_(a.cols()) {
  if (static_cast<int>(b.size()) != num_rows_) {
    throw DimensionError("SimplexSolver: b length != rows");
  }
  if (static_cast<int>(cost.size()) != num_struct_) {
    throw DimensionError("SimplexSolver: cost length != cols");
  }
  struct_cost_ = cost;
  row_coeffs_.resize(num_rows_);
  rhs_.resize(num_rows_);
  slack_sign_.resize(num_rows_);
  for (int i = 0; i < num_rows_; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    row_coeffs_[i].assign(a.row(i), a.row(i) + num_struct_);
    if (sign < 0.0) {
      for (double& v : row_coeffs_[i]) v = -v;
    }
    rhs_[i] = sign * b[i];
    slack_sign_[i] = sign;
  }
  columns_.reserve(num_struct_ + 2 * num_rows_);
  for (int j = 0; j < num_struct_; ++j) {
    columns_.push_back({ColKind::kStructural, j});
  }
  for (int i = 0; i < num_rows_; ++i) {
    columns_.push_back({ColKind::kSlack, i});
  }
  max_iterations_ = max_iterations;
}

long SimplexSolver::iteration_budget() const {
  if (max_iterations_ > 0) return max_iterations_;
  return 200 + 20L * (num_rows_ + num_struct_);
}

double SimplexSolver::column_entry(int col, int row) const {
  const Column& c = columns_[col];
  switch (c.kind) {
    case ColKind::kStructural: return row_coeffs_[row][c.index];
    case ColKind::kSlack: return row == c.index ? slack_sign_[c.index] : 0.0;
    case ColKind::kArtificial: return row == c.index ? 1.0 : 0.0;
  }
  return 0.0;
}

void SimplexSolver::column_vector(int col, std::vector<double>& out) const {
  out.assign(num_rows_, 0.0);
  const Column& c = columns_[col];
  if (c.kind == ColKind::kStructural) {
    for (int i = 0; i < num_rows_; ++i) out[i] = row_coeffs_[i][c.index];
  } else if (c.kind == ColKind::kSlack) {
    out[c.index] = slack_sign_[c.index];
  } else {
    out[c.index] = 1.0;
  }
}

void SimplexSolver::ftran(int col, std::vector<double>& w) const {
  w.assign(num_rows_, 0.0);
  const Column& c = columns_[col];
  if (c.kind == ColKind::kStructural) {
    std::vector<double> tmp(num_rows_);
    for (int i = 0; i < num_rows_; ++i) tmp[i] = row_coeffs_[i][c.index];
    for (int i = 0; i < num_rows_; ++i) {
      const double* brow = binv_[i].data();
      double acc = 0.0;
      for (int k = 0; k < num_rows_; ++k) acc += brow[k] * tmp[k];
      w[i] = acc;
    }
  } else {
    const int r = c.index;
    const double sign = c.kind == ColKind::kSlack ? slack_sign_[r] : 1.0;
    for (int i = 0; i < num_rows_; ++i) w[i] = sign * binv_[i][r];
  }
}

double SimplexSolver::phase_cost_of(int col,
                                    const std::vector<double>& cost) const {
  return cost[col];
}

void SimplexSolver::compute_duals(const std::vector<double>& phase_cost,
                                  std::vector<double>& y) const {
  y.assign(num_rows_, 0.0);
  for (int k = 0; k < num_rows_; ++k) {
    const double cb = phase_cost[basis_[k]];
    if (cb == 0.0) continue;
    const double* brow = binv_[k].data();
    for (int i = 0; i < num_rows_; ++i) y[i] += cb * brow[i];
  }
}

void SimplexSolver::pivot(int leave_row, int enter_col,
                          const std::vector<double>& w) {
  const double wr = w[leave_row];
  std::vector<double>& prow = binv_[leave_row];
  const double inv = 1.0 / wr;
  for (double& v : prow) v *= inv;
  basic_values_[leave_row] *= inv;
  for (int i = 0; i < num_rows_; ++i) {
    if (i == leave_row) continue;
    const double f = w[i];
    if (f == 0.0) continue;
    double* row = binv_[i].data();
    const double* pr = prow.data();
    for (int k = 0; k < num_rows_; ++k) row[k] -= f * pr[k];
    basic_values_[i] -= f * basic_values_[leave_row];
  }
  in_basis_[basis_[leave_row]] = 0;
  basis_[leave_row] = enter_col;
  in_basis_[enter_col] = 1;
  ++iterations_;
  ++pivots_since_refactor_;
  work_ += 2.0 * num_rows_ * (num_rows_ + num_struct_);
}

bool SimplexSolver::refactor() {
  // Gauss-Jordan inversion of the basis matrix with partial pivoting.
  const int m = num_rows_;
  std::vector<std::vector<double>> aug(m, std::vector<double>(m, 0.0));
  std::vector<double> colbuf;
  for (int k = 0; k < m; ++k) {
    column_vector(basis_[k], colbuf);
    for (int i = 0; i < m; ++i) aug[i][k] = colbuf[i];
  }
  std::vector<std::vector<double>> inv(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    double best = std::fabs(aug[col][col]);
    for (int i = col + 1; i < m; ++i) {
      const double v = std::fabs(aug[i][col]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < 1e-12) return false;
    if (piv != col) {
      std::swap(aug[piv], aug[col]);
      std::swap(inv[piv], inv[col]);
    }
    const double d = 1.0 / aug[col][col];
    for (int k = 0; k < m; ++k) {
      aug[col][k] *= d;
      inv[col][k] *= d;
    }
    for (int i = 0; i < m; ++i) {
      if (i == col) continue;
      const double f = aug[i][col];
      if (f == 0.0) continue;
      for (int k = 0; k < m; ++k) {
        aug[i][k] -= f * aug[col][k];
        inv[i][k] -= f * inv[col][k];
      }
    }
  }
  binv_ = std::move(inv);
  recompute_basic_values();
  pivots_since_refactor_ = 0;
  work_ += (2.0 / 3.0) * static_cast<double>(m) * m * m;
  return true;
}

void SimplexSolver::recompute_basic_values() {
  basic_values_.assign(num_rows_, 0.0);
  for (int i = 0; i < num_rows_; ++i) {
    const double* brow = binv_[i].data();
    double acc = 0.0;
    for (int k = 0; k < num_rows_; ++k) acc += brow[k] * rhs_[k];
    basic_values_[i] = acc;
  }
}

SolveStatus SimplexSolver::primal_loop(const std::vector<double>& phase_cost,
                                       bool allow_artificial) {
  const long budget = iteration_budget();
  const long start = iterations_;
  bool bland_mode = false;
  long degenerate_streak = 0;
  const long stall_limit = 200 + 2L * (num_rows_ + num_struct_);
  std::vector<double> y;
  std::vector<double> struct_price(num_struct_);
  std::vector<double> w;

  while (iterations_ - start < budget) {
    compute_duals(phase_cost, y);
    work_ += 2.0 * num_rows_ * (num_rows_ + num_struct_);

    // Price structural columns in one pass over the rows.
    std::fill(struct_price.begin(), struct_price.end(), 0.0);
    for (int i = 0; i < num_rows_; ++i) {
      const double yi = y[i];
      if (yi == 0.0) continue;
      const double* row = row_coeffs_[i].data();
      for (int j = 0; j < num_struct_; ++j) struct_price[j] += yi * row[j];
    }

    int enter = -1;
    double best = kReducedCostTol;
    const int ncols = static_cast<int>(columns_.size());
    for (int col = 0; col < ncols; ++col) {
      if (in_basis_[col]) continue;
      const Column& c = columns_[col];
      if (c.kind == ColKind::kArtificial && !allow_artificial) continue;
      double d;
      if (c.kind == ColKind::kStructural) {
        d = phase_cost[col] - struct_price[c.index];
      } else if (c.kind == ColKind::kSlack) {
        d = phase_cost[col] - slack_sign_[c.index] * y[c.index];
      } else {
        d = phase_cost[col] - y[c.index];
      }
      if (d > best) {
        enter = col;
        if (bland_mode) break;
        best = d;
      }
    }
    if (enter < 0) return SolveStatus::kOptimal;

    ftran(enter, w);

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_rows_; ++i) {
      if (w[i] > kPivotTol) {
        const double ratio = std::max(basic_values_[i], 0.0) / w[i];
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio < best_ratio + 1e-12) {
          // Tie: Bland wants the lowest column id; otherwise prefer the
          // largest pivot for stability.
          const bool take = bland_mode ? basis_[i] < basis_[leave]
                                       : std::fabs(w[i]) > std::fabs(w[leave]);
          if (take) {
            best_ratio = std::min(best_ratio, ratio);
            leave = i;
          }
        }
      }
    }
    if (leave < 0) {
      // Re-check against a fresh factorization before declaring unbounded.
      if (pivots_since_refactor_ > 0) {
        if (!refactor()) return SolveStatus::kIterationLimit;
        continue;
      }
      return SolveStatus::kUnbounded;
    }

    if (best_ratio <= kDegenerateStep) {
      if (++degenerate_streak > stall_limit) bland_mode = true;
    } else {
      degenerate_streak = 0;
      bland_mode = false;
    }

    pivot(leave, enter, w);
    if (pivots_since_refactor_ >= kRefactorInterval) {
      if (!refactor()) return SolveStatus::kIterationLimit;
    }
  }
  return SolveStatus::kIterationLimit;
}

SolveStatus SimplexSolver::dual_loop(const std::vector<double>& phase_cost) {
  const long budget = iteration_budget();
  const long start = iterations_;
  std::vector<double> y;
  std::vector<double> struct_price(num_struct_);
  std::vector<double> rho(num_rows_);
  std::vector<double> alpha_struct(num_struct_);
  std::vector<double> w;

  while (iterations_ - start < budget) {
    int leave = -1;
    double most_negative = -kFeasTol;
    for (int i = 0; i < num_rows_; ++i) {
      if (basic_values_[i] < most_negative) {
        most_negative = basic_values_[i];
        leave = i;
      }
    }
    if (leave < 0) return SolveStatus::kOptimal;

    compute_duals(phase_cost, y);
    std::fill(struct_price.begin(), struct_price.end(), 0.0);
    for (int i = 0; i < num_rows_; ++i) {
      const double yi = y[i];
      if (yi == 0.0) continue;
      const double* row = row_coeffs_[i].data();
      for (int j = 0; j < num_struct_; ++j) struct_price[j] += yi * row[j];
    }

    rho.assign(binv_[leave].begin(), binv_[leave].end());
    std::fill(alpha_struct.begin(), alpha_struct.end(), 0.0);
    for (int i = 0; i < num_rows_; ++i) {
      const double ri = rho[i];
      if (ri == 0.0) continue;
      const double* row = row_coeffs_[i].data();
      for (int j = 0; j < num_struct_; ++j) alpha_struct[j] += ri * row[j];
    }
    work_ += 4.0 * num_rows_ * (num_rows_ + num_struct_);

    int enter = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_alpha_abs = 0.0;
    const int ncols = static_cast<int>(columns_.size());
    for (int col = 0; col < ncols; ++col) {
      if (in_basis_[col]) continue;
      const Column& c = columns_[col];
      if (c.kind == ColKind::kArtificial) continue;
      double alpha;
      double d;
      if (c.kind == ColKind::kStructural) {
        alpha = alpha_struct[c.index];
        d = phase_cost[col] - struct_price[c.index];
      } else {
        alpha = slack_sign_[c.index] * rho[c.index];
        d = phase_cost[col] - slack_sign_[c.index] * y[c.index];
      }
      if (alpha < -kPivotTol) {
        const double ratio = std::min(d, 0.0) / alpha;  // >= 0
        if (enter < 0 || ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          best_alpha_abs = std::fabs(alpha);
          enter = col;
        } else if (ratio < best_ratio + 1e-12 &&
                   std::fabs(alpha) > best_alpha_abs) {
          best_ratio = std::min(best_ratio, ratio);
          best_alpha_abs = std::fabs(alpha);
          enter = col;
        }
      }
    }
    if (enter < 0) {
      if (pivots_since_refactor_ > 0) {
        if (!refactor()) return SolveStatus::kIterationLimit;
        continue;
      }
      return SolveStatus::kInfeasible;
    }

    ftran(enter, w);
    if (std::fabs(w[leave]) < kPivotTol) {
      if (!refactor()) return SolveStatus::kIterationLimit;
      continue;
    }
    pivot(leave, enter, w);
    if (pivots_since_refactor_ >= kRefactorInterval) {
      if (!refactor()) return SolveStatus::kIterationLimit;
    }
  }
  return SolveStatus::kIterationLimit;
}

std::vector<double> SimplexSolver::phase2_cost() const {
  std::vector<double> cost(columns_.size(), 0.0);
  for (int j = 0; j < num_struct_; ++j) cost[j] = struct_cost_[j];
  return cost;
}

bool SimplexSolver::verify_optimal(const std::vector<double>& phase_cost) {
  if (!refactor()) return false;
  for (double v : basic_values_) {
    if (v < -1e-7) return false;
  }
  std::vector<double> y;
  compute_duals(phase_cost, y);
  std::vector<double> struct_price(num_struct_, 0.0);
  for (int i = 0; i < num_rows_; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    const double* row = row_coeffs_[i].data();
    for (int j = 0; j < num_struct_; ++j) struct_price[j] += yi * row[j];
  }
  const int ncols = static_cast<int>(columns_.size());
  for (int col = 0; col < ncols; ++col) {
    if (in_basis_[col]) continue;
    const Column& c = columns_[col];
    double d;
    if (c.kind == ColKind::kStructural) {
      d = phase_cost[col] - struct_price[c.index];
    } else if (c.kind == ColKind::kSlack) {
      d = phase_cost[col] - slack_sign_[c.index] * y[c.index];
    } else {
      continue;
    }
    if (d > 1e-7) return false;
  }
  // Duality gap: primal c'x against y'b at the same basis.
  double primal = 0.0;
  for (int i = 0; i < num_rows_; ++i) {
    primal += phase_cost[basis_[i]] * basic_values_[i];
  }
  double dual = 0.0;
  for (int i = 0; i < num_rows_; ++i) dual += y[i] * rhs_[i];
  if (std::fabs(primal - dual) > 1e-7 * (1.0 + std::fabs(primal))) return false;
  return true;
}

SolveStatus SimplexSolver::solve() {
  basis_.assign(num_rows_, -1);
  in_basis_.assign(columns_.size(), 0);
  first_artificial_ = -1;

  // Slack basis where the slack has +1 sign; artificial columns elsewhere.
  std::vector<int> artificial_rows;
  for (int i = 0; i < num_rows_; ++i) {
    if (slack_sign_[i] > 0.0) {
      const int slack_col = num_struct_ + i;
      basis_[i] = slack_col;
      in_basis_[slack_col] = 1;
    } else {
      artificial_rows.push_back(i);
    }
  }
  if (!artificial_rows.empty()) {
    first_artificial_ = static_cast<int>(columns_.size());
    for (int r : artificial_rows) {
      const int col = static_cast<int>(columns_.size());
      columns_.push_back({ColKind::kArtificial, r});
      basis_[r] = col;
      in_basis_.push_back(1);
    }
  }
  binv_.assign(num_rows_, std::vector<double>(num_rows_, 0.0));
  for (int i = 0; i < num_rows_; ++i) binv_[i][i] = 1.0;
  recompute_basic_values();

  if (!artificial_rows.empty()) {
    std::vector<double> p1cost(columns_.size(), 0.0);
    for (int col = first_artificial_; col < static_cast<int>(columns_.size());
         ++col) {
      p1cost[col] = -1.0;
    }
    SolveStatus st = primal_loop(p1cost, true);
    if (st == SolveStatus::kIterationLimit) return st;
    if (st == SolveStatus::kUnbounded) return SolveStatus::kIterationLimit;
    double infeasibility = 0.0;
    for (int i = 0; i < num_rows_; ++i) {
      if (columns_[basis_[i]].kind == ColKind::kArtificial) {
        infeasibility += std::max(basic_values_[i], 0.0);
      }
    }
    double scale = 1.0;
    for (double r : rhs_) scale = std::max(scale, std::fabs(r));
    if (infeasibility > 1e-7 * scale) return SolveStatus::kInfeasible;

    // Drive any remaining (zero-valued) artificials out of the basis.
    std::vector<double> w;
    for (int i = 0; i < num_rows_; ++i) {
      if (columns_[basis_[i]].kind != ColKind::kArtificial) continue;
      int replacement = -1;
      for (int col = 0; col < first_artificial_; ++col) {
        if (in_basis_[col]) continue;
        ftran(col, w);
        if (std::fabs(w[i]) > 1e-7) {
          replacement = col;
          break;
        }
      }
      if (replacement >= 0) {
        ftran(replacement, w);
        pivot(i, replacement, w);
      }
      // A dependent row keeps its artificial basic at zero; it is priced
      // out of every later loop so it can never re-enter or grow.
    }
  }

  std::vector<double> cost = phase2_cost();
  for (int round = 0; round < 5; ++round) {
    SolveStatus st = primal_loop(cost, false);
    if (st != SolveStatus::kOptimal) return st;
    if (verify_optimal(cost)) {
      return SolveStatus::kOptimal;
    }
  }
  return SolveStatus::kIterationLimit;
}

void SimplexSolver::add_cut(const std::vector<double>& coeffs, double rhs) {
  if (static_cast<int>(coeffs.size()) != num_struct_) {
    throw DimensionError("add_cut: coefficient length != structural vars");
  }
  const int old_rows = num_rows_;
  // New basic value = rhs - g'x for the current solution, computed through
  // the basic components of g.
  double gx = 0.0;
  std::vector<double> gb(old_rows, 0.0);
  for (int k = 0; k < old_rows; ++k) {
    const Column& c = columns_[basis_[k]];
    if (c.kind == ColKind::kStructural) {
      gb[k] = coeffs[c.index];
      gx += gb[k] * basic_values_[k];
    }
  }

  row_coeffs_.push_back(coeffs);
  rhs_.push_back(rhs);
  slack_sign_.push_back(1.0);
  const int new_row = old_rows;
  num_rows_ = old_rows + 1;

  const int slack_col = static_cast<int>(columns_.size());
  columns_.push_back({ColKind::kSlack, new_row});
  in_basis_.push_back(1);
  basis_.push_back(slack_col);

  // binv extends as [[B^-1, 0], [-g_B' B^-1, 1]].
  std::vector<double> bottom(num_rows_, 0.0);
  for (int k = 0; k < old_rows; ++k) {
    const double f = gb[k];
    if (f == 0.0) continue;
    const double* row = binv_[k].data();
    for (int l = 0; l < old_rows; ++l) bottom[l] -= f * row[l];
  }
  bottom[new_row] = 1.0;
  for (auto& row : binv_) row.push_back(0.0);
  binv_.push_back(std::move(bottom));
  basic_values_.push_back(rhs - gx);
  work_ += static_cast<double>(old_rows) * old_rows;
}

SolveStatus SimplexSolver::reoptimize(bool certify) {
  std::vector<double> cost = phase2_cost();
  SolveStatus st = dual_loop(cost);
  if (st != SolveStatus::kOptimal) return st;
  // Dual pivots preserve dual feasibility but roundoff can leave a
  // profitable column; sweep with the primal loop until clean.
  st = primal_loop(cost, false);
  if (st != SolveStatus::kOptimal) return st;
  if (!certify) return SolveStatus::kOptimal;
  return certify_optimal();
}

SolveStatus SimplexSolver::certify_optimal() {
  std::vector<double> cost = phase2_cost();
  for (int round = 0; round < 5; ++round) {
    if (verify_optimal(cost)) {
      return SolveStatus::kOptimal;
    }
    SolveStatus st = dual_loop(cost);
    if (st != SolveStatus::kOptimal) return st;
    st = primal_loop(cost, false);
    if (st != SolveStatus::kOptimal) return st;
  }
  return SolveStatus::kIterationLimit;
}

std::vector<double> SimplexSolver::structural_solution() const {
  std::vector<double> x(num_struct_, 0.0);
  for (int i = 0; i < num_rows_; ++i) {
    const Column& c = columns_[basis_[i]];
    if (c.kind == ColKind::kStructural) {
      x[c.index] = basic_values_[i];
    }
  }
  return x;
}

double SimplexSolver::objective() const {
  double obj = 0.0;
  for (int i = 0; i < num_rows_; ++i) {
    const Column& c = columns_[basis_[i]];
    if (c.kind == ColKind::kStructural) {
      obj += struct_cost_[c.index] * basic_values_[i];
    }
  }
  return obj;
}

}  // namespace shrinklp
