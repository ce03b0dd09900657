// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shrinklp {

namespace {

// Relative guard for the identification condition
// tr(Abar Abar^T) tr(UU^T) > tr^2(Abar U^T); equality means Abar is
// proportional to U and the coefficients are not identified.
constexpr double kDegenerateRel = 1e-12;

struct TargetStats {
  double tuu;  // tr(U U^T)
};

TargetStats target_stats(const TargetMatrix& target) {
  const double tuu = frobenius_norm_sq(target.matrix);
  if (!(tuu > 0.0)) {
    throw InvalidTargetError("target matrix has zero Frobenius norm");
  }
  return {tuu};
}

}  // namespace

ObservationSet::ObservationSet(std::vector<DenseMatrix> samples,
                               NoiseModelTag tag)
    : samples_(std::move(samples)), tag_(tag) {
  if (samples_.size() < 2) {
    throw InsufficientSamplesError(
        "ObservationSet: need n >= 2 samples, got " +
        std::to_string(samples_.size()));
  }
  for (const DenseMatrix& s : samples_) {
    s.require_same_shape(samples_.front(), "ObservationSet");
  }
}

TargetMatrix target_ones(int rows, int cols) {
  return {DenseMatrix::ones(rows, cols), TargetKind::kOnes};
}

TargetMatrix target_from_matrix(DenseMatrix b, TargetKind kind) {
  if (!(frobenius_norm_sq(b) > 0.0)) {
    throw InvalidTargetError("target_from_matrix: zero matrix");
  }
  return {std::move(b), kind};
}

DenseMatrix sample_mean(const ObservationSet& obs) {
  DenseMatrix mean(obs.rows(), obs.cols());
  double* out = mean.data().data();
  const std::size_t sz = mean.size();
  for (const DenseMatrix& s : obs.samples()) {
    const double* in = s.data().data();
    for (std::size_t i = 0; i < sz; ++i) out[i] += in[i];
  }
  const double inv_n = 1.0 / obs.count();
  for (std::size_t i = 0; i < sz; ++i) out[i] *= inv_n;
  return mean;
}

namespace {

// sum_k ||Atilde_k - Abar||_F^2
double total_spread(const ObservationSet& obs, const DenseMatrix& mean) {
  const double* pm = mean.data().data();
  const std::size_t sz = mean.size();
  double total = 0.0;
  for (const DenseMatrix& s : obs.samples()) {
    const double* ps = s.data().data();
    double acc = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
      const double d = ps[i] - pm[i];
      acc += d * d;
    }
    total += acc;
  }
  return total;
}

}  // namespace

double noise_level_hat(const ObservationSet& obs) {
  const DenseMatrix mean = sample_mean(obs);
  const double denom = static_cast<double>(obs.count() - 1) * obs.rows() *
                       static_cast<double>(obs.cols());
  return total_spread(obs, mean) / denom;
}

ShrinkageCoefficients coefficients_bona_fide(const ObservationSet& obs,
                                             const TargetMatrix& target,
                                             bool clamp) {
  const DenseMatrix mean = sample_mean(obs);
  mean.require_same_shape(target.matrix, "coefficients_bona_fide");
  const auto [tuu] = target_stats(target);

  const double n = obs.count();
  const double spread = total_spread(obs, mean);
  const double taa = frobenius_norm_sq(mean);
  const double tau = frobenius_inner(mean, target.matrix);

  const double ratio_aa = taa / tuu;
  const double ratio_au = tau / tuu;
  const double denom = ratio_aa - ratio_au * ratio_au;
  if (denom <= kDegenerateRel * ratio_aa) {
    throw DegenerateSampleError(
        "coefficients_bona_fide: sample mean is proportional to the target");
  }

  const double numer = spread / (n * (n - 1.0) * tuu);
  ShrinkageCoefficients co;
  co.kind = CoefficientKind::kBonaFide;
  co.raw_alpha = 1.0 - numer / denom;
  co.raw_beta = (1.0 - co.raw_alpha) * ratio_au;
  co.alpha = co.raw_alpha;
  co.beta = co.raw_beta;
  if (clamp && (co.raw_alpha < 0.0 || co.raw_alpha > 1.0)) {
    co.alpha = std::clamp(co.raw_alpha, 0.0, 1.0);
    co.beta = (1.0 - co.alpha) * ratio_au;
    co.clamped = true;
  }
  return co;
}

ShrinkageCoefficients coefficients_finite_sample_oracle(
    const DenseMatrix& a_true, const DenseMatrix& a_bar,
    const TargetMatrix& target) {
  a_true.require_same_shape(a_bar, "coefficients_finite_sample_oracle");
  a_true.require_same_shape(target.matrix, "coefficients_finite_sample_oracle");
  const auto [tuu] = target_stats(target);

  const double taa_bar = frobenius_norm_sq(a_bar);
  const double tba = frobenius_inner(a_bar, a_true);
  const double tau_bar = frobenius_inner(a_bar, target.matrix);
  const double tau_true = frobenius_inner(a_true, target.matrix);

  const double ratio_aa = taa_bar / tuu;
  const double ratio_au = tau_bar / tuu;
  const double denom = ratio_aa - ratio_au * ratio_au;
  if (denom <= kDegenerateRel * ratio_aa) {
    throw DegenerateSampleError(
        "coefficients_finite_sample_oracle: Abar proportional to target");
  }

  ShrinkageCoefficients co;
  co.kind = CoefficientKind::kFiniteSampleOracle;
  co.alpha = (tba / tuu - ratio_au * (tau_true / tuu)) / denom;
  co.beta = (tau_true - co.alpha * tau_bar) / tuu;
  co.raw_alpha = co.alpha;
  co.raw_beta = co.beta;
  return co;
}

ShrinkageCoefficients coefficients_asymptotic_oracle(
    const DenseMatrix& a_true, double noise_scale, int n,
    const TargetMatrix& target) {
  a_true.require_same_shape(target.matrix, "coefficients_asymptotic_oracle");
  if (noise_scale < 0.0) {
    throw ConstructionError("coefficients_asymptotic_oracle: noise_scale < 0");
  }
  if (n < 1) {
    throw InsufficientSamplesError(
        "coefficients_asymptotic_oracle: n must be >= 1");
  }
  const auto [tuu] = target_stats(target);
  const double taa = frobenius_norm_sq(a_true);
  const double tau = frobenius_inner(a_true, target.matrix);

  const double ratio_aa = taa / tuu;
  const double ratio_au = tau / tuu;
  // Cauchy-Schwarz makes the gap nonnegative, so the denominator is at
  // least noise_scale/n; the 0/0 case is only reachable with a zero noise
  // scale and a target proportional to the truth.
  const double gap = ratio_aa - ratio_au * ratio_au;
  const double denom = gap + noise_scale / n;
  if (denom <= 0.0) {
    throw DegenerateSampleError(
        "coefficients_asymptotic_oracle: zero noise and proportional target");
  }

  ShrinkageCoefficients co;
  co.kind = CoefficientKind::kAsymptoticOracle;
  co.alpha = 1.0 - (noise_scale / n) / denom;
  co.beta = (1.0 - co.alpha) * ratio_au;
  co.raw_alpha = co.alpha;
  co.raw_beta = co.beta;
  return co;
}

std::pair<DenseMatrix, ShrinkageCoefficients> shrunk_matrix(
    const ObservationSet& obs, const TargetMatrix& target, bool clamp) {
  const ShrinkageCoefficients co = coefficients_bona_fide(obs, target, clamp);
  const DenseMatrix mean = sample_mean(obs);
  return {linear_combination(co.alpha, mean, co.beta, target.matrix), co};
}

ObservationSet transpose_observations(const ObservationSet& obs) {
  std::vector<DenseMatrix> transposed;
  transposed.reserve(obs.samples().size());
  for (const DenseMatrix& s : obs.samples()) {
    transposed.push_back(s.transposed());
  }
  NoiseModelTag tag = obs.tag();
  if (tag == NoiseModelTag::kRowCorrelated) {
    tag = NoiseModelTag::kColumnCorrelated;
  } else if (tag == NoiseModelTag::kColumnCorrelated) {
    tag = NoiseModelTag::kRowCorrelated;
  }
  return ObservationSet(std::move(transposed), tag);
}

}  // namespace shrinklp
