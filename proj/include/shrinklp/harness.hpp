// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shrinklp/scenario.hpp"
#include "shrinklp/solver.hpp"

namespace shrinklp {

enum class SweepMode { kFixedCVaryP, kFixedPVaryC };

/// solve_time_ms is a deterministic work proxy by default (megaflop count
/// of the solves, so reruns are byte-identical); kWallClock switches the
/// column to measured milliseconds at the cost of reproducible output.
enum class TimingMode { kDeterministic, kWallClock };

/// Inclusive numeric range a:b:step.
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::vector<double> values() const;
};

struct ExperimentConfig {
  SweepMode sweep_mode = SweepMode::kFixedCVaryP;
  double c_fixed = 0.5;
  SweepRange p_range{100, 400, 100};
  int p_fixed = 200;
  SweepRange c_range{0.5, 2.5, 0.5};
  std::vector<double> sigma_list{0.5, 1.0, 2.0};
  std::vector<double> gamma_factors{0.2, 0.5, 0.8};
  int n = 5;
  int reps = 20;
  NoiseModel noise_model = NoiseModel::kIidGaussian;
  CovarianceSpec covariance = CovarianceSpec::dense_well_conditioned();
  bool clamp = true;
  std::uint64_t master_seed = 42;
  std::string output_path = "results.csv";
  int workers = 0;  // 0 = hardware concurrency
  TimingMode timing = TimingMode::kDeterministic;
  double entry_low = 4.0;
  double entry_high = 6.0;
  std::string debug_dump_dir;

  void validate() const;  // throws ConfigError
};

enum class Method { kNominal, kShrinkage, kRobust };

const char* to_string(Method method);

enum class RecordStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kDegenerateSample
};

const char* to_string(RecordStatus status);

/// One (replication, method) outcome. Optional fields are written as empty
/// CSV cells; metrics are only present for Optimal records.
struct ExperimentRecord {
  double c = 0.0;
  int p = 0;
  int m = 0;
  double sigma = 0.0;
  int n = 0;
  Method method = Method::kNominal;
  std::optional<double> gamma_factor;  // robust only
  int rep_index = 0;
  std::uint64_t seed = 0;
  RecordStatus status = RecordStatus::kOptimal;
  std::optional<double> rel_obj;
  std::optional<double> viol_mag;
  std::optional<double> viol_ratio;
  std::optional<double> solve_time_ms;
  std::optional<double> alpha_hat;  // shrinkage only
  std::optional<double> beta_hat;
  std::optional<bool> clamped;
};

struct CellParams {
  double c = 0.0;
  int p = 0;
  int m = 0;
  double sigma = 0.0;
};

/// Expands the configured sweep into cells, in deterministic order.
std::vector<CellParams> sweep_cells(const ExperimentConfig& config);

/// Runs one replication: generate the instance and observations once, solve
/// the true, nominal, shrinkage and per-gamma robust problems, and score
/// each against the true constraints. Solver failures become records with
/// the corresponding status; nothing throws past this function except I/O.
std::vector<ExperimentRecord> run_replication(const CellParams& cell,
                                              int rep_index,
                                              const ExperimentConfig& config);

struct SweepSummary {
  std::string csv_path;
  std::string agg_path;
  std::size_t record_count = 0;
  std::size_t solver_failures = 0;  // IterationLimit or estimator failure
  double failure_rate = 0.0;
};

/// Full sweep: cells x reps over a worker pool, records sorted by key and
/// written to output_path plus aggregated means to <stem>_agg.csv. Output
/// bytes depend only on the config, not on scheduling or worker count.
SweepSummary run_sweep(const ExperimentConfig& config);

/// Exact header of the record CSV.
extern const char* const kRecordCsvHeader;

std::string record_csv_line(const ExperimentRecord& record);

}  // namespace shrinklp
