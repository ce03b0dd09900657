// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "shrinklp/matrix_io.hpp"
#include "shrinklp/metrics.hpp"

namespace shrinklp {

const char* const kRecordCsvHeader =
    "c,p,m,sigma,n,method,gamma_factor,rep,seed,status,rel_obj,viol_mag,"
    "viol_ratio,solve_time_ms,alpha_hat,beta_hat,clamped";

const char* to_string(Method method) {
  switch (method) {
    case Method::kNominal: return "nominal";
    case Method::kShrinkage: return "shrinkage";
    case Method::kRobust: return "robust";
  }
  return "unknown";
}

const char* to_string(RecordStatus status) {
  switch (status) {
    case RecordStatus::kOptimal: return "Optimal";
    case RecordStatus::kInfeasible: return "Infeasible";
    case RecordStatus::kUnbounded: return "Unbounded";
    case RecordStatus::kIterationLimit: return "IterationLimit";
    case RecordStatus::kDegenerateSample: return "DegenerateSample";
  }
  return "Unknown";
}

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  if (step <= 0.0) {
    if (start == stop) {
      out.push_back(start);
      return out;
    }
    throw ConfigError("sweep range needs a positive step");
  }
  const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count < 1) throw ConfigError("empty sweep range");
  for (long i = 0; i < count; ++i) out.push_back(start + i * step);
  return out;
}

void ExperimentConfig::validate() const {
  if (reps < 1) throw ConfigError("reps must be >= 1");
  if (n < 2) throw ConfigError("n must be >= 2");
  if (sigma_list.empty()) throw ConfigError("sigma list must be non-empty");
  for (double s : sigma_list) {
    if (!(s > 0.0)) throw ConfigError("every sigma must be > 0");
  }
  for (double g : gamma_factors) {
    if (!(g > 0.0)) throw ConfigError("every gamma factor must be > 0");
  }
  if (!(entry_low < entry_high)) {
    throw ConfigError("entry_low must be < entry_high");
  }
  if (workers < 0) throw ConfigError("workers must be >= 0");
  if (output_path.empty()) throw ConfigError("output path must be set");
  for (const CellParams& cell : sweep_cells(*this)) {
    if (cell.m < 1) {
      throw ConfigError("cell has m = round(c*p) < 1");
    }
  }
}

std::vector<CellParams> sweep_cells(const ExperimentConfig& config) {
  std::vector<CellParams> cells;
  if (config.sweep_mode == SweepMode::kFixedCVaryP) {
    for (double pv : config.p_range.values()) {
      const int p = static_cast<int>(std::lround(pv));
      if (p < 1) throw ConfigError("p values must be >= 1");
      const int m = static_cast<int>(std::lround(config.c_fixed * p));
      for (double sigma : config.sigma_list) {
        cells.push_back({config.c_fixed, p, m, sigma});
      }
    }
  } else {
    if (config.p_fixed < 1) throw ConfigError("p must be >= 1");
    for (double c : config.c_range.values()) {
      const int m = static_cast<int>(std::lround(c * config.p_fixed));
      for (double sigma : config.sigma_list) {
        cells.push_back({c, config.p_fixed, m, sigma});
      }
    }
  }
  return cells;
}

namespace {

std::uint64_t cell_stream_key(const CellParams& cell,
                              const ExperimentConfig& config) {
  std::uint64_t key = RngStream::mix(static_cast<std::uint64_t>(cell.p),
                                     static_cast<std::uint64_t>(cell.m));
  key = RngStream::mix(key, std::bit_cast<std::uint64_t>(cell.sigma));
  key = RngStream::mix(key, std::bit_cast<std::uint64_t>(cell.c));
  key = RngStream::mix(key, static_cast<std::uint64_t>(config.n));
  key = RngStream::mix(key, static_cast<std::uint64_t>(config.noise_model));
  return key;
}

RecordStatus from_solve_status(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return RecordStatus::kOptimal;
    case SolveStatus::kInfeasible: return RecordStatus::kInfeasible;
    case SolveStatus::kUnbounded: return RecordStatus::kUnbounded;
    case SolveStatus::kIterationLimit: return RecordStatus::kIterationLimit;
  }
  return RecordStatus::kIterationLimit;
}

struct TimedSolution {
  Solution solution;
  double wall_ms = 0.0;
  double extra_work_flops = 0.0;  // estimation effort outside the solver
};

double report_time_ms(const TimedSolution& timed, TimingMode mode) {
  if (mode == TimingMode::kWallClock) return timed.wall_ms;
  // Work proxy: megaflops of solver + estimator effort, i.e. milliseconds
  // on a nominal 1 Gflop/s machine. Deterministic across reruns.
  return (timed.solution.work_units + timed.extra_work_flops) / 1e6;
}

void score_record(ExperimentRecord& rec, const TimedSolution& timed,
                  const Solution& true_solution, const Instance& instance,
                  TimingMode mode) {
  rec.status = from_solve_status(timed.solution.status);
  if (timed.solution.status != SolveStatus::kOptimal) return;
  rec.solve_time_ms = report_time_ms(timed, mode);
  const auto [mag, ratio] =
      violation_metrics(instance.a_true, instance.b, timed.solution.x);
  rec.viol_mag = mag;
  rec.viol_ratio = ratio;
  try {
    rec.rel_obj =
        relative_objective(timed.solution.objective, true_solution.objective);
  } catch (const MetricUndefinedError&) {
    // Excluded from aggregation and counted there.
  }
}

}  // namespace

std::vector<ExperimentRecord> run_replication(const CellParams& cell,
                                              int rep_index,
                                              const ExperimentConfig& config) {
  ScenarioSpec spec;
  spec.m = cell.m;
  spec.p = cell.p;
  spec.n = config.n;
  spec.sigma = cell.sigma;
  spec.noise_model = config.noise_model;
  spec.covariance = config.covariance;
  spec.entry_low = config.entry_low;
  spec.entry_high = config.entry_high;

  const std::uint64_t stream_id = RngStream::mix(
      cell_stream_key(cell, config), static_cast<std::uint64_t>(rep_index));
  RngStream rng(config.master_seed, stream_id);

  ExperimentRecord base;
  base.c = cell.c;
  base.p = cell.p;
  base.m = cell.m;
  base.sigma = cell.sigma;
  base.n = config.n;
  base.rep_index = rep_index;
  base.seed = stream_id;

  std::vector<ExperimentRecord> records;
  records.reserve(2 + config.gamma_factors.size());

  const Instance instance = generate_instance(spec, rng);
  const ObservationSet obs = generate_observations(instance.a_true, spec, rng);
  const double estimation_flops =
      8.0 * config.n * static_cast<double>(cell.m) * cell.p;

  SolverOptions options;
  options.debug_dump_dir = config.debug_dump_dir;

  const auto timed_lp = [&](const ConstrainedProblem& problem,
                            const std::string& label) {
    TimedSolution timed;
    SolverOptions opts = options;
    opts.debug_label = label;
    const auto start = std::chrono::steady_clock::now();
    timed.solution = solve_lp(problem, opts);
    timed.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return timed;
  };
  const std::string tag = std::to_string(cell.p) + "_" +
                          format_double(cell.sigma) + "_r" +
                          std::to_string(rep_index);

  const TimedSolution truth =
      timed_lp(build_nominal(instance.a_true, instance.b, instance.cost),
               "true_" + tag);

  if (truth.solution.status != SolveStatus::kOptimal) {
    // Without a true optimum nothing downstream is scoreable; log one
    // record per method carrying the failure.
    const RecordStatus status = from_solve_status(truth.solution.status);
    ExperimentRecord rec = base;
    rec.method = Method::kNominal;
    rec.status = status;
    records.push_back(rec);
    rec.method = Method::kShrinkage;
    records.push_back(rec);
    for (double g : config.gamma_factors) {
      rec.method = Method::kRobust;
      rec.gamma_factor = g;
      records.push_back(rec);
    }
    return records;
  }

  const DenseMatrix a_bar = sample_mean(obs);

  {
    TimedSolution nominal =
        timed_lp(build_nominal(a_bar, instance.b, instance.cost),
                 "nominal_" + tag);
    nominal.extra_work_flops = config.n * static_cast<double>(cell.m) * cell.p;
    ExperimentRecord rec = base;
    rec.method = Method::kNominal;
    score_record(rec, nominal, truth.solution, instance, config.timing);
    records.push_back(rec);
  }

  {
    ExperimentRecord rec = base;
    rec.method = Method::kShrinkage;
    try {
      const auto start = std::chrono::steady_clock::now();
      const auto [a_star, coeffs] =
          shrunk_matrix(obs, target_ones(cell.m, cell.p), config.clamp);
      TimedSolution shrink =
          timed_lp(build_shrinkage(a_star, instance.b, instance.cost),
                   "shrinkage_" + tag);
      shrink.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      shrink.extra_work_flops = estimation_flops;
      score_record(rec, shrink, truth.solution, instance, config.timing);
      if (rec.status == RecordStatus::kOptimal) {
        rec.alpha_hat = coeffs.alpha;
        rec.beta_hat = coeffs.beta;
        rec.clamped = coeffs.clamped;
      }
    } catch (const DegenerateSampleError&) {
      rec.status = RecordStatus::kDegenerateSample;
    }
    records.push_back(rec);
  }

  for (double factor : config.gamma_factors) {
    ExperimentRecord rec = base;
    rec.method = Method::kRobust;
    rec.gamma_factor = factor;
    ConstrainedProblem problem{a_bar, instance.b, instance.cost,
                               factor * cell.sigma};
    TimedSolution robust;
    SolverOptions opts = options;
    opts.debug_label = "robust_" + format_double(factor) + "_" + tag;
    const auto start = std::chrono::steady_clock::now();
    robust.solution = solve_robust(problem, opts);
    robust.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    robust.extra_work_flops = config.n * static_cast<double>(cell.m) * cell.p;
    score_record(rec, robust, truth.solution, instance, config.timing);
    records.push_back(rec);
  }
  return records;
}

namespace {

int method_rank(const ExperimentRecord& r) {
  switch (r.method) {
    case Method::kNominal: return 0;
    case Method::kShrinkage: return 1;
    case Method::kRobust: return 2;
  }
  return 3;
}

bool record_less(const ExperimentRecord& a, const ExperimentRecord& b) {
  const auto key = [](const ExperimentRecord& r) {
    return std::make_tuple(r.c, r.p, r.sigma, r.rep_index, method_rank(r),
                           r.gamma_factor.value_or(-1.0));
  };
  return key(a) < key(b);
}

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

std::string record_csv_line(const ExperimentRecord& r) {
  std::string line;
  line += format_double(r.c);
  line += ',';
  line += std::to_string(r.p);
  line += ',';
  line += std::to_string(r.m);
  line += ',';
  line += format_double(r.sigma);
  line += ',';
  line += std::to_string(r.n);
  line += ',';
  line += to_string(r.method);
  line += ',';
  line += opt_field(r.gamma_factor);
  line += ',';
  line += std::to_string(r.rep_index);
  line += ',';
  line += std::to_string(r.seed);
  line += ',';
  line += to_string(r.status);
  line += ',';
  line += opt_field(r.rel_obj);
  line += ',';
  line += opt_field(r.viol_mag);
  line += ',';
  line += opt_field(r.viol_ratio);
  line += ',';
  line += opt_field(r.solve_time_ms);
  line += ',';
  line += opt_field(r.alpha_hat);
  line += ',';
  line += opt_field(r.beta_hat);
  line += ',';
  if (r.clamped) line += *r.clamped ? "true" : "false";
  return line;
}

namespace {

struct AggCell {
  long records = 0;
  long optimal = 0;
  long rel_obj_excluded = 0;
  long clamped_count = 0;
  double sum_rel_obj = 0.0;
  long n_rel_obj = 0;
  double sum_viol_mag = 0.0;
  double sum_viol_ratio = 0.0;
  double sum_time = 0.0;
  double sum_alpha = 0.0;
  double sum_beta = 0.0;
  long n_coeffs = 0;
};

std::string agg_csv(const std::vector<ExperimentRecord>& records, int n) {
  using Key = std::tuple<double, int, int, double, int, double>;
  std::map<Key, AggCell> cells;
  for (const ExperimentRecord& r : records) {
    const Key key{r.c, r.p, r.m, r.sigma, method_rank(r),
                  r.gamma_factor.value_or(-1.0)};
    AggCell& cell = cells[key];
    ++cell.records;
    if (r.status != RecordStatus::kOptimal) continue;
    ++cell.optimal;
    if (r.rel_obj) {
      cell.sum_rel_obj += *r.rel_obj;
      ++cell.n_rel_obj;
    } else {
      ++cell.rel_obj_excluded;
    }
    cell.sum_viol_mag += r.viol_mag.value_or(0.0);
    cell.sum_viol_ratio += r.viol_ratio.value_or(0.0);
    cell.sum_time += r.solve_time_ms.value_or(0.0);
    if (r.alpha_hat) {
      cell.sum_alpha += *r.alpha_hat;
      cell.sum_beta += r.beta_hat.value_or(0.0);
      ++cell.n_coeffs;
      if (r.clamped.value_or(false)) ++cell.clamped_count;
    }
  }
  std::string out =
      "c,p,m,sigma,n,method,gamma_factor,records,optimal,excluded,"
      "rel_obj_excluded,mean_rel_obj,mean_viol_mag,mean_viol_ratio,"
      "mean_solve_time_ms,mean_alpha_hat,mean_beta_hat,clamped_count\n";
  const char* method_names[] = {"nominal", "shrinkage", "robust"};
  for (const auto& [key, cell] : cells) {
    const auto& [c, p, m, sigma, rank, gamma] = key;
    out += format_double(c);
    out += ',';
    out += std::to_string(p);
    out += ',';
    out += std::to_string(m);
    out += ',';
    out += format_double(sigma);
    out += ',';
    out += std::to_string(n);
    out += ',';
    out += method_names[rank];
    out += ',';
    if (gamma >= 0.0) out += format_double(gamma);
    out += ',';
    out += std::to_string(cell.records);
    out += ',';
    out += std::to_string(cell.optimal);
    out += ',';
    out += std::to_string(cell.records - cell.optimal);
    out += ',';
    out += std::to_string(cell.rel_obj_excluded);
    out += ',';
    out += cell.n_rel_obj ? format_double(cell.sum_rel_obj / cell.n_rel_obj)
                          : std::string();
    out += ',';
    out += cell.optimal ? format_double(cell.sum_viol_mag / cell.optimal)
                        : std::string();
    out += ',';
    out += cell.optimal ? format_double(cell.sum_viol_ratio / cell.optimal)
                        : std::string();
    out += ',';
    out += cell.optimal ? format_double(cell.sum_time / cell.optimal)
                        : std::string();
    out += ',';
    out += cell.n_coeffs ? format_double(cell.sum_alpha / cell.n_coeffs)
                         : std::string();
    out += ',';
    out += cell.n_coeffs ? format_double(cell.sum_beta / cell.n_coeffs)
                         : std::string();
    out += ',';
    out += std::to_string(cell.clamped_count);
    out += '\n';
  }
  return out;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << content;
    out.close();
    if (!out) throw IoError("write failed: " + tmp);
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

}  // namespace

SweepSummary run_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::vector<CellParams> cells = sweep_cells(config);

  struct Task {
    int cell_index;
    int rep;
  };
  std::vector<Task> tasks;
  tasks.reserve(cells.size() * config.reps);
  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    for (int rep = 0; rep < config.reps; ++rep) tasks.push_back({ci, rep});
  }

  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(tasks.size()));

  std::vector<std::vector<ExperimentRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size() || failed.load()) break;
      try {
        results[idx] = run_replication(cells[tasks[idx].cell_index],
                                       tasks[idx].rep, config);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure_message = e.what();
        failed.store(true);
        break;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) {
    throw Error("sweep replication failed: " + failure_message);
  }

  std::vector<ExperimentRecord> records;
  for (auto& chunk : results) {
    records.insert(records.end(), chunk.begin(), chunk.end());
  }
  std::stable_sort(records.begin(), records.end(), record_less);

  std::string csv(kRecordCsvHeader);
  csv += '\n';
  for (const ExperimentRecord& r : records) {
    csv += record_csv_line(r);
    csv += '\n';
  }
  write_atomically(config.output_path, csv);

  std::string agg_path = config.output_path;
  const std::string suffix = ".csv";
  if (agg_path.size() > suffix.size() &&
      agg_path.compare(agg_path.size() - suffix.size(), suffix.size(),
                       suffix) == 0) {
    agg_path.insert(agg_path.size() - suffix.size(), "_agg");
  } else {
    agg_path += "_agg.csv";
  }
  write_atomically(agg_path, agg_csv(records, config.n));

  SweepSummary summary;
  summary.csv_path = config.output_path;
  summary.agg_path = agg_path;
  summary.record_count = records.size();
  for (const ExperimentRecord& r : records) {
    if (r.status == RecordStatus::kIterationLimit ||
        r.status == RecordStatus::kDegenerateSample) {
      ++summary.solver_failures;
    }
  }
  summary.failure_rate =
      records.empty()
          ? 0.0
          : static_cast<double>(summary.solver_failures) / records.size();
  return summary;
}

}  // namespace shrinklp
