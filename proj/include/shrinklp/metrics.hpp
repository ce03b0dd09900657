// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "shrinklp/matrix.hpp"

namespace shrinklp {

/// A constraint counts as violated only beyond this absolute residual;
/// exact zero is untestable in floating point.
inline constexpr double kViolationTol = 1e-9;

/// (method_obj - true_obj) / true_obj, sign preserved.
/// Throws MetricUndefinedError when |true_obj| < 1e-12.
double relative_objective(double method_obj, double true_obj);

/// Against the true constraints: mean positive residual per row, and the
/// fraction of rows with residual above kViolationTol.
std::pair<double, double> violation_metrics(const DenseMatrix& a_true,
                                            const std::vector<double>& b,
                                            const std::vector<double>& x);

}  // namespace shrinklp
