// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "shrinklp/matrix.hpp"

namespace shrinklp {

/// How the observation noise was generated. Metadata only: every estimator
/// below is a function of the samples alone and must never branch on this.
enum class NoiseModelTag { kIid, kColumnCorrelated, kRowCorrelated };

/// n >= 2 noisy samples of one unknown matrix, all the same shape.
class ObservationSet {
 public:
  ObservationSet(std::vector<DenseMatrix> samples, NoiseModelTag tag);

  const std::vector<DenseMatrix>& samples() const { return samples_; }
  int count() const { return static_cast<int>(samples_.size()); }
  int rows() const { return samples_.front().rows(); }
  int cols() const { return samples_.front().cols(); }
  NoiseModelTag tag() const { return tag_; }

 private:
  std::vector<DenseMatrix> samples_;
  NoiseModelTag tag_;
};

enum class CoefficientKind { kFiniteSampleOracle, kAsymptoticOracle, kBonaFide };

/// A shrinkage pair (alpha, beta) for the estimate alpha*Abar + beta*U.
/// `alpha`/`beta` are the values to use; the raw_* fields keep the
/// pre-clamp values so they stay reportable.
struct ShrinkageCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double raw_alpha = 0.0;
  double raw_beta = 0.0;
  CoefficientKind kind = CoefficientKind::kBonaFide;
  bool clamped = false;
};

enum class TargetKind { kOnes, kScaledKnown, kMasked };

/// Prior-information matrix U the sample mean is shrunk toward.
/// Must have tr(U U^T) > 0 since every coefficient formula divides by it.
struct TargetMatrix {
  DenseMatrix matrix;
  TargetKind kind = TargetKind::kOnes;
};

/// All-ones target: no prior information, every entry shrunk toward the
/// grand mean of the sample average.
TargetMatrix target_ones(int rows, int cols);

/// Wraps a caller-supplied target (scaled copy of the truth, or a masked
/// pattern with zeros where entries may only be scaled). Throws
/// InvalidTargetError if B is identically zero.
TargetMatrix target_from_matrix(DenseMatrix b, TargetKind kind);

/// Entrywise average of the samples.
DenseMatrix sample_mean(const ObservationSet& obs);

/// (1/((n-1) m p)) * sum_k ||Atilde_k - Abar||_F^2.
///
/// Consistent for the entrywise noise variance sigma^2 under i.i.d. noise,
/// and for (1/m) tr(Sigma) under column-correlated noise; the formula is the
/// same either way, only the interpretation changes.
double noise_level_hat(const ObservationSet& obs);

/// Fully data-driven coefficients:
///   alpha_hat = 1 - [ sum_k ||Atilde_k - Abar||_F^2 / (n (n-1) tr(UU^T)) ]
///                 / [ tr(Abar Abar^T)/tr(UU^T) - tr^2(Abar U^T)/tr^2(UU^T) ]
///   beta_hat  = (1 - alpha_hat) * tr(Abar U^T) / tr(UU^T)
/// If clamp is set and alpha_hat falls outside [0,1], alpha is clamped and
/// beta recomputed from the clamped alpha; raw values are preserved.
/// Throws DegenerateSampleError when Abar is numerically proportional to U.
ShrinkageCoefficients coefficients_bona_fide(const ObservationSet& obs,
                                             const TargetMatrix& target,
                                             bool clamp);

/// Minimizer of ||alpha*Abar + beta*U - A||_F^2 using the true matrix A.
/// Optimal at any fixed size but inapplicable in practice; used as the
/// oracle reference in experiments.
ShrinkageCoefficients coefficients_finite_sample_oracle(
    const DenseMatrix& a_true, const DenseMatrix& a_bar,
    const TargetMatrix& target);

/// Deterministic limit of the finite-sample coefficients:
///   alpha = 1 - (s/n) / [ tr(AA^T)/tr(UU^T) + s/n - tr^2(AU^T)/tr^2(UU^T) ]
///   beta  = (1 - alpha) * tr(AU^T)/tr(UU^T)
/// where s is sigma^2 under i.i.d. noise or (1/m) tr(Sigma) under
/// column-correlated noise. alpha always lands in [0,1].
ShrinkageCoefficients coefficients_asymptotic_oracle(const DenseMatrix& a_true,
                                                     double noise_scale, int n,
                                                     const TargetMatrix& target);

/// The estimate A* = alpha_hat * Abar + beta_hat * U with the bona fide
/// coefficients, returned together with the coefficients used.
std::pair<DenseMatrix, ShrinkageCoefficients> shrunk_matrix(
    const ObservationSet& obs, const TargetMatrix& target, bool clamp);

/// Transposes every sample and swaps the row/column correlation tags.
/// Row-correlated noise is handled by estimating on the transposed set with
/// the roles of the two dimensions switched.
ObservationSet transpose_observations(const ObservationSet& obs);

}  // namespace shrinklp
