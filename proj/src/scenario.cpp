// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/scenario.hpp"

#include <cmath>
#include <string>

namespace shrinklp {

const char* to_string(NoiseModel model) {
  switch (model) {
    case NoiseModel::kIidGaussian: return "iid";
    case NoiseModel::kIidUniform: return "iid-uniform";
    case NoiseModel::kColumnCorrelated: return "col-corr";
    case NoiseModel::kRowCorrelated: return "row-corr";
  }
  return "unknown";
}

void ScenarioSpec::validate() const {
  if (m < 1 || p < 1) throw ConfigError("scenario: m and p must be >= 1");
  if (n < 2) throw ConfigError("scenario: n must be >= 2");
  if (sigma < 0.0) throw ConfigError("scenario: sigma must be >= 0");
  if (!(entry_low < entry_high)) {
    throw ConfigError("scenario: entry_low must be < entry_high");
  }
}

Instance generate_instance(const ScenarioSpec& spec, const RngStream& rng) {
  spec.validate();
  RngStream stream = rng.substream(kStreamInstance);
  DenseMatrix a(spec.m, spec.p);
  for (int i = 0; i < spec.m; ++i) {
    double* row = a.row(i);
    for (int j = 0; j < spec.p; ++j) {
      row[j] = stream.uniform(spec.entry_low, spec.entry_high);
    }
  }
  std::vector<double> b(spec.m);
  for (double& v : b) v = stream.uniform(spec.entry_low, spec.entry_high);
  std::vector<double> cost(spec.p);
  for (double& v : cost) v = stream.uniform(spec.entry_low, spec.entry_high);
  return {std::move(a), std::move(b), std::move(cost)};
}

namespace {

DenseMatrix draw_noise(int rows, int cols, NoiseModel model, RngStream& rng) {
  // Uniform on [-sqrt(3), sqrt(3)] has mean zero and unit variance.
  static const double kHalfWidth = std::sqrt(3.0);
  DenseMatrix e(rows, cols);
  double* data = e.data().data();
  const std::size_t sz = e.size();
  if (model == NoiseModel::kIidUniform) {
    for (std::size_t i = 0; i < sz; ++i) {
      data[i] = rng.uniform(-kHalfWidth, kHalfWidth);
    }
  } else {
    for (std::size_t i = 0; i < sz; ++i) data[i] = rng.normal();
  }
  return e;
}

}  // namespace

ObservationSet generate_observations(const DenseMatrix& a_true,
                                     const ScenarioSpec& spec,
                                     const RngStream& rng,
                                     double* noise_scale_truth) {
  spec.validate();
  if (a_true.rows() != spec.m || a_true.cols() != spec.p) {
    throw DimensionError("generate_observations: a_true shape mismatch");
  }
  RngStream noise_stream = rng.substream(kStreamNoise);
  const std::size_t sz = a_true.size();

  NoiseModelTag tag = NoiseModelTag::kIid;
  DenseMatrix root;
  double truth = spec.sigma * spec.sigma;
  if (spec.noise_model == NoiseModel::kColumnCorrelated) {
    RngStream cov_stream = rng.substream(kStreamCovariance);
    root = make_spd_root(spec.m, spec.covariance, cov_stream);
    truth = frobenius_norm_sq(root) / spec.m;  // tr(R^2)/m for symmetric R
    tag = NoiseModelTag::kColumnCorrelated;
  } else if (spec.noise_model == NoiseModel::kRowCorrelated) {
    RngStream cov_stream = rng.substream(kStreamCovariance);
    root = make_spd_root(spec.p, spec.covariance, cov_stream);
    truth = frobenius_norm_sq(root) / spec.p;
    tag = NoiseModelTag::kRowCorrelated;
  }
  if (noise_scale_truth) *noise_scale_truth = truth;

  std::vector<DenseMatrix> samples;
  samples.reserve(spec.n);
  for (int k = 0; k < spec.n; ++k) {
    DenseMatrix noise =
        draw_noise(spec.m, spec.p, spec.noise_model, noise_stream);
    DenseMatrix sample(spec.m, spec.p);
    switch (spec.noise_model) {
      case NoiseModel::kIidGaussian:
      case NoiseModel::kIidUniform: {
        const double* pa = a_true.data().data();
        const double* pn = noise.data().data();
        double* ps = sample.data().data();
        for (std::size_t i = 0; i < sz; ++i) {
          ps[i] = pa[i] + spec.sigma * pn[i];
        }
        break;
      }
      case NoiseModel::kColumnCorrelated: {
        DenseMatrix colored = matmul(root, noise);
        const double* pa = a_true.data().data();
        const double* pn = colored.data().data();
        double* ps = sample.data().data();
        for (std::size_t i = 0; i < sz; ++i) ps[i] = pa[i] + pn[i];
        break;
      }
      case NoiseModel::kRowCorrelated: {
        DenseMatrix colored = matmul(noise, root);
        const double* pa = a_true.data().data();
        const double* pn = colored.data().data();
        double* ps = sample.data().data();
        for (std::size_t i = 0; i < sz; ++i) ps[i] = pa[i] + pn[i];
        break;
      }
    }
    samples.push_back(std::move(sample));
  }
  return ObservationSet(std::move(samples), tag);
}

}  // namespace shrinklp
