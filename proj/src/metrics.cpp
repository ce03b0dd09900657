// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/metrics.hpp"

#include <cmath>

namespace shrinklp {

double relative_objective(double method_obj, double true_obj) {
  if (std::fabs(true_obj) < 1e-12) {
    throw MetricUndefinedError("relative_objective: true objective is zero");
  }
  return (method_obj - true_obj) / true_obj;
}

std::pair<double, double> violation_metrics(const DenseMatrix& a_true,
                                            const std::vector<double>& b,
                                            const std::vector<double>& x) {
  const int m = a_true.rows();
  const int p = a_true.cols();
  if (static_cast<int>(b.size()) != m || static_cast<int>(x.size()) != p) {
    throw DimensionError("violation_metrics: shape mismatch");
  }
  double magnitude = 0.0;
  int violated = 0;
  for (int i = 0; i < m; ++i) {
    const double* row = a_true.row(i);
    double dot = 0.0;
    for (int j = 0; j < p; ++j) dot += row[j] * x[j];
    const double residual = dot - b[i];
    if (residual > 0.0) magnitude += residual;
    if (residual > kViolationTol) ++violated;
  }
  return {magnitude / m, static_cast<double>(violated) / m};
}

}  // namespace shrinklp
