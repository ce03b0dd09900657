// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace shrinklp {

DenseMatrix::DenseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, 0.0) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("DenseMatrix: rows and cols must be >= 1, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("DenseMatrix: rows and cols must be >= 1");
  }
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("DenseMatrix: entry count " +
                         std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "*" + std::to_string(cols));
  }
  if (!all_finite()) {
    throw ConstructionError("DenseMatrix: non-finite entry");
  }
}

DenseMatrix DenseMatrix::ones(int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (double& v : m.data_) v = 1.0;
  return m;
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void DenseMatrix::require_same_shape(const DenseMatrix& other,
                                     const char* op) const {
  if (!same_shape(other)) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " vs " + std::to_string(other.rows_) + "x" +
                         std::to_string(other.cols_));
  }
}

bool DenseMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double frobenius_inner(const DenseMatrix& a, const DenseMatrix& b) {
  a.require_same_shape(b, "frobenius_inner");
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double sum = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) sum += pa[i] * pb[i];
  return sum;
}

double frobenius_norm_sq(const DenseMatrix& a) {
  const double* pa = a.data().data();
  double sum = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) sum += pa[i] * pa[i];
  return sum;
}

DenseMatrix linear_combination(double alpha, const DenseMatrix& a, double beta,
                               const DenseMatrix& b) {
  a.require_same_shape(b, "linear_combination");
  DenseMatrix out(a.rows(), a.cols());
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) po[i] = alpha * pa[i] + beta * pb[i];
  return out;
}

namespace {

// i-k-j loop order keeps both B and C rows streaming.
void matmul_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out,
                 int row_begin, int row_end) {
  const int inner = a.cols();
  const int cols = b.cols();
  for (int i = row_begin; i < row_end; ++i) {
    double* out_row = out.row(i);
    const double* a_row = a.row(i);
    for (int k = 0; k < inner; ++k) {
      const double aik = a_row[k];
      const double* b_row = b.row(k);
      for (int j = 0; j < cols; ++j) out_row[j] += aik * b_row[j];
    }
  }
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, int threads) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  }
  DenseMatrix out(a.rows(), b.cols());
  int want = threads > 0 ? threads
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (want < 1) want = 1;
  const std::size_t work = a.size() * static_cast<std::size_t>(b.cols());
  if (want == 1 || a.rows() < 2 * want || work < (1u << 22)) {
    matmul_rows(a, b, out, 0, a.rows());
    return out;
  }
  std::vector<std::thread> pool;
  const int chunk = (a.rows() + want - 1) / want;
  for (int t = 0; t < want; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(a.rows(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(matmul_rows, std::cref(a), std::cref(b), std::ref(out),
                      lo, hi);
  }
  for (auto& th : pool) th.join();
  return out;
}

DenseMatrix make_spd_root(int size, const CovarianceSpec& spec,
                          RngStream& rng) {
  if (size < 1) {
    throw ConstructionError("make_spd_root: size must be >= 1");
  }
  switch (spec.kind) {
    case CovarianceSpec::Kind::kIdentityScaled: {
      if (spec.scale <= 0.0) {
        throw ConstructionError("make_spd_root: identity scale must be > 0");
      }
      DenseMatrix r(size, size);
      for (int i = 0; i < size; ++i) r(i, i) = spec.scale;
      return r;
    }
    case CovarianceSpec::Kind::kDiagonal: {
      if (spec.diag_low <= 0.0 || spec.diag_high < spec.diag_low) {
        throw ConstructionError(
            "make_spd_root: diagonal range must satisfy 0 < low <= high");
      }
      DenseMatrix r(size, size);
      for (int i = 0; i < size; ++i) {
        const double t = size == 1 ? 0.0 : static_cast<double>(i) / (size - 1);
        r(i, i) = spec.diag_low + t * (spec.diag_high - spec.diag_low);
      }
      return r;
    }
    case CovarianceSpec::Kind::kDenseWellConditioned: {
      // Diagonal in [1,2] plus a symmetric perturbation small enough that
      // Gershgorin keeps every eigenvalue in [0.55, 2.45] (condition < 5).
      const double coupling = 0.45;
      DenseMatrix r(size, size);
      for (int i = 0; i < size; ++i) {
        const double t = size == 1 ? 0.0 : static_cast<double>(i) / (size - 1);
        r(i, i) = 1.0 + t;
        for (int j = i + 1; j < size; ++j) {
          const double v = (coupling / size) * rng.uniform(-1.0, 1.0);
          r(i, j) = v;
          r(j, i) = v;
        }
      }
      return r;
    }
  }
  throw ConstructionError("make_spd_root: unknown covariance spec");
}

}  // namespace shrinklp
