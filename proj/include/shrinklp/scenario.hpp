// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "shrinklp/estimator.hpp"
#include "shrinklp/matrix.hpp"
#include "shrinklp/rng.hpp"

namespace shrinklp {

/// iid_uniform draws mean-zero unit-variance uniform noise instead of
/// Gaussian; the estimators only need finite fourth moments, so this
/// exercises the weaker assumption.
enum class NoiseModel {
  kIidGaussian,
  kIidUniform,
  kColumnCorrelated,
  kRowCorrelated
};

const char* to_string(NoiseModel model);

/// Parameters for one synthetic problem cell. Entry bounds follow the
/// U(4,6) generation scheme by default. `sigma` scales i.i.d. noise; the
/// correlated models take their scale from the covariance spec instead.
struct ScenarioSpec {
  int m = 1;
  int p = 1;
  int n = 5;
  double sigma = 1.0;
  NoiseModel noise_model = NoiseModel::kIidGaussian;
  CovarianceSpec covariance = CovarianceSpec::dense_well_conditioned();
  double entry_low = 4.0;
  double entry_high = 6.0;

  void validate() const;  // throws ConfigError on bad values
};

struct Instance {
  DenseMatrix a_true;
  std::vector<double> b;
  std::vector<double> cost;
};

/// Stream tags so instance data, noise, and covariance roots come from
/// disjoint substreams of one replication stream.
inline constexpr std::uint64_t kStreamInstance = 0xA11CE;
inline constexpr std::uint64_t kStreamNoise = 0xB0B;
inline constexpr std::uint64_t kStreamCovariance = 0xC0C0A;

/// A, b and cost with i.i.d. uniform entries; fully determined by the
/// stream identity (not its consumed state).
Instance generate_instance(const ScenarioSpec& spec, const RngStream& rng);

/// n noisy copies of a_true per the spec's noise model:
///   iid:               A + sigma * E_k
///   column-correlated: A + R * E_k     (R = spd root of size m)
///   row-correlated:    A + E_k * R     (R of size p)
/// E_k always has i.i.d. mean-zero unit-variance entries. When
/// noise_scale_truth is non-null it receives the generator-known value the
/// spread estimator is consistent for: sigma^2, (1/m)tr(R^2) or (1/p)tr(R^2).
ObservationSet generate_observations(const DenseMatrix& a_true,
                                     const ScenarioSpec& spec,
                                     const RngStream& rng,
                                     double* noise_scale_truth = nullptr);

}  // namespace shrinklp
