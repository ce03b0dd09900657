// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "shrinklp/errors.hpp"
#include "shrinklp/rng.hpp"

namespace shrinklp {

/// Dense real matrix, row-major, 64-bit floats. The problem scales here
/// (p up to ~900, m up to ~1800) never justify sparse or blocked storage.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  /// Zero matrix of the given shape.
  DenseMatrix(int rows, int cols);

  /// Takes ownership of row-major entries; rejects wrong length and
  /// non-finite values.
  DenseMatrix(int rows, int cols, std::vector<double> entries);

  static DenseMatrix ones(int rows, int cols);
  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Pointer to the start of row i.
  const double* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * cols_;
  }
  double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }

  DenseMatrix transposed() const;

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// Throws DimensionError unless shapes match.
  void require_same_shape(const DenseMatrix& other, const char* op) const;

  /// True iff every entry is finite.
  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Sum_ij a_ij * b_ij, i.e. tr(A B^T), computed as an entrywise sum in
/// O(rows*cols). Symmetric in its arguments.
double frobenius_inner(const DenseMatrix& a, const DenseMatrix& b);

/// tr(A A^T) = squared Frobenius norm. Nonnegative, zero iff A == 0.
double frobenius_norm_sq(const DenseMatrix& a);

/// alpha*A + beta*B, entrywise.
DenseMatrix linear_combination(double alpha, const DenseMatrix& a, double beta,
                               const DenseMatrix& b);

/// Dense product A*B. Parallelizes over row blocks for large inputs; the
/// result is independent of the thread count (rows are disjoint).
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, int threads = 0);

/// How to build a symmetric positive-definite covariance square root.
struct CovarianceSpec {
  enum class Kind { kIdentityScaled, kDiagonal, kDenseWellConditioned };

  Kind kind = Kind::kIdentityScaled;
  double scale = 1.0;      // identity-scaled: R = scale * I
  double diag_low = 1.0;   // diagonal: entries linearly spaced in
  double diag_high = 2.0;  //   [diag_low, diag_high]

  static CovarianceSpec identity_scaled(double scale) {
    return {Kind::kIdentityScaled, scale, 0.0, 0.0};
  }
  static CovarianceSpec diagonal(double low, double high) {
    return {Kind::kDiagonal, 0.0, low, high};
  }
  static CovarianceSpec dense_well_conditioned() {
    return {Kind::kDenseWellConditioned, 0.0, 0.0, 0.0};
  }
};

/// Builds a symmetric positive-definite root R; the covariance it represents
/// is R^2, and (1/size)*tr(R^2) is the ground-truth per-row noise scale for
/// instances generated with it. The root is constructed directly (diagonal
/// dominance for the dense spec), so no eigendecomposition is involved; the
/// dense spec keeps the condition number of R below ~5.
DenseMatrix make_spd_root(int size, const CovarianceSpec& spec, RngStream& rng);

}  // namespace shrinklp
