// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: ten numbered criteria covering oracle exactness,
// consistency at scale, robust-solver correctness, trend reproduction and
// byte-level determinism. Each criterion prints one PASS/FAIL line; the
// process exits nonzero if any executed criterion fails.
//
// Run all:            ./acceptance
// Run one criterion:  ./acceptance --criterion 6

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "shrinklp/estimator.hpp"
#include "shrinklp/harness.hpp"
#include "shrinklp/matrix_io.hpp"
#include "shrinklp/metrics.hpp"
#include "shrinklp/scenario.hpp"
#include "shrinklp/solver.hpp"
#include "support/csv.hpp"
#include "support/oracles.hpp"

using namespace shrinklp;
using shrinklp::testing::CsvFile;
using shrinklp::testing::eval_g;
using shrinklp::testing::load_csv;
using shrinklp::testing::median;
using shrinklp::testing::numeric_min_g;
using shrinklp::testing::parallel_for_index;
using shrinklp::testing::robust_grid_oracle;
using shrinklp::testing::robust_max_violation;
using shrinklp::testing::slurp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  bool ok = true;
  std::ostringstream log;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what;
    }
  }
};

std::string fmt(double v) { return format_double(v); }

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

DenseMatrix uniform_matrix(int rows, int cols, RngStream& rng, double lo = 4.0,
                           double hi = 6.0) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

// ---------------------------------------------------------------------------
// 1. Finite-sample optimality against an independent numeric minimizer.
Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  const double sigmas[] = {0.5, 1.0, 2.0};
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RngStream rng(1000 + trial, 0);
    const int m = 2 + static_cast<int>(rng.uniform(0.0, 19.0));
    const int p = 2 + static_cast<int>(rng.uniform(0.0, 19.0));
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
    const double sigma = sigmas[trial % 3];

    const DenseMatrix a_true = uniform_matrix(m, p, rng);
    DenseMatrix a_bar(m, p);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < p; ++j) {
        double noise = 0.0;
        for (int k = 0; k < n; ++k) noise += rng.normal();
        a_bar(i, j) = a_true(i, j) + sigma * noise / n;
      }
    }
    const TargetMatrix u = target_ones(m, p);
    const auto co = coefficients_finite_sample_oracle(a_true, a_bar, u);
    const auto [na, nb] = numeric_min_g(a_true, a_bar, u.matrix);
    worst_gap = std::max({worst_gap, std::fabs(co.alpha - na),
                          std::fabs(co.beta - nb)});
    check.expect(std::fabs(co.alpha - na) <= 1e-6 &&
                     std::fabs(co.beta - nb) <= 1e-6,
                 "trial " + std::to_string(trial) + ": closed form (" +
                     fmt(co.alpha) + "," + fmt(co.beta) +
                     ") vs numeric (" + fmt(na) + "," + fmt(nb) + ")");

    const double g_star = eval_g(co.alpha, co.beta, a_true, a_bar, u.matrix);
    RngStream probes(2000 + trial, 1);
    bool dominated = true;
    for (int probe = 0; probe < 10000; ++probe) {
      const double alpha = probes.uniform(-5.0, 5.0);
      const double beta = probes.uniform(-5.0, 5.0);
      if (g_star > eval_g(alpha, beta, a_true, a_bar, u.matrix) + 1e-12) {
        dominated = false;
        break;
      }
    }
    check.expect(dominated,
                 "trial " + std::to_string(trial) + ": probe beat the oracle");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.expect(seconds < 30.0, "runtime " + fmt(seconds) + "s >= 30s");
  return {check.ok, check.ok ? "100 instances within 1e-6 (worst gap " +
                                   fmt(worst_gap) + "), " + fmt(seconds) + "s"
                             : check.log.str()};
}

// ---------------------------------------------------------------------------
// 2. Worked 1x2 example, exact to 1e-12 including the clamping path.
Outcome criterion2() {
  Check check;
  const DenseMatrix a_true(1, 2, {1, 3});
  const DenseMatrix a_bar(1, 2, {1, 2});
  const TargetMatrix u = target_ones(1, 2);
  const auto oracle = coefficients_finite_sample_oracle(a_true, a_bar, u);
  check.expect(std::fabs(oracle.alpha - 2.0) <= 1e-12 &&
                   std::fabs(oracle.beta + 1.0) <= 1e-12,
               "finite-sample oracle " + fmt(oracle.alpha) + "," +
                   fmt(oracle.beta) + " != (2,-1)");
  const double residual =
      eval_g(oracle.alpha, oracle.beta, a_true, a_bar, u.matrix);
  check.expect(residual <= 1e-24, "residual " + fmt(residual) + " != 0");

  std::vector<DenseMatrix> samples{DenseMatrix(1, 2, {1, 2}),
                                   DenseMatrix(1, 2, {3, 4})};
  const ObservationSet obs(samples, NoiseModelTag::kIid);
  const auto raw = coefficients_bona_fide(obs, target_ones(1, 2), false);
  check.expect(std::fabs(raw.alpha + 3.0) <= 1e-12 &&
                   std::fabs(raw.beta - 10.0) <= 1e-12,
               "bona fide raw " + fmt(raw.alpha) + "," + fmt(raw.beta) +
                   " != (-3,10)");
  const auto clamped = coefficients_bona_fide(obs, target_ones(1, 2), true);
  check.expect(clamped.clamped && clamped.alpha == 0.0 &&
                   std::fabs(clamped.beta - 2.5) <= 1e-12,
               "clamped pair " + fmt(clamped.alpha) + "," + fmt(clamped.beta) +
                   " != (0,2.5)");
  return {check.ok, check.ok ? "(2,-1) exact, raw (-3,10), clamped (0,2.5)"
                             : check.log.str()};
}

// ---------------------------------------------------------------------------
// Shared harness for criteria 3 and 4: medians of coefficient and noise
// errors across sizes 100/400/1600.
struct ConsistencyRow {
  double alpha_err = 0.0;
  double beta_err = 0.0;
  double noise_rel_err = 0.0;
  double trace_gap = 0.0;  // |tr(AbarAbar')/mp - tr(AA')/mp - s/n|
};

ConsistencyRow consistency_run(int size, int seed, NoiseModel model) {
  ScenarioSpec spec;
  spec.m = size;
  spec.p = size;
  spec.n = 5;
  spec.sigma = 1.0;
  spec.noise_model = model;
  spec.covariance = CovarianceSpec::dense_well_conditioned();
  RngStream rng(777000 + seed, size);
  const Instance inst = generate_instance(spec, rng);
  double truth = 0.0;
  const ObservationSet obs =
      generate_observations(inst.a_true, spec, rng, &truth);
  const TargetMatrix u = target_ones(size, size);

  const auto hat = coefficients_bona_fide(obs, u, false);
  const auto star = coefficients_asymptotic_oracle(inst.a_true, truth, spec.n, u);
  const double noise_hat = noise_level_hat(obs);

  ConsistencyRow row;
  row.alpha_err = std::fabs(hat.raw_alpha - star.alpha);
  row.beta_err = std::fabs(hat.raw_beta - star.beta);
  row.noise_rel_err = std::fabs(noise_hat - truth) / truth;

  const DenseMatrix mean = sample_mean(obs);
  const double mp = static_cast<double>(size) * size;
  row.trace_gap = std::fabs(frobenius_norm_sq(mean) / mp -
                            frobenius_norm_sq(inst.a_true) / mp -
                            truth / spec.n);
  return row;
}

Outcome consistency_criterion(NoiseModel model, bool check_trace_gap) {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  const int sizes[] = {100, 400, 1600};
  const int seeds = 20;
  double med_alpha[3], med_beta[3], med_noise[3], med_trace[3];
  for (int si = 0; si < 3; ++si) {
    std::vector<ConsistencyRow> rows(seeds);
    parallel_for_index(seeds, 2, [&](int seed) {
      rows[seed] = consistency_run(sizes[si], seed, model);
    });
    std::vector<double> a, b, s, t;
    for (const auto& row : rows) {
      a.push_back(row.alpha_err);
      b.push_back(row.beta_err);
      s.push_back(row.noise_rel_err);
      t.push_back(row.trace_gap);
    }
    med_alpha[si] = median(a);
    med_beta[si] = median(b);
    med_noise[si] = median(s);
    med_trace[si] = median(t);
  }
  for (int si = 1; si < 3; ++si) {
    check.expect(med_alpha[si] <= med_alpha[si - 1] + 1e-12,
                 "alpha medians not non-increasing");
    check.expect(med_beta[si] <= med_beta[si - 1] + 1e-12,
                 "beta medians not non-increasing");
    check.expect(med_noise[si] <= med_noise[si - 1] + 1e-12,
                 "noise medians not non-increasing");
  }
  check.expect(med_alpha[2] <= 0.05,
               "final alpha median " + fmt(med_alpha[2]) + " > 0.05");
  check.expect(med_beta[2] <= 0.25,
               "final beta median " + fmt(med_beta[2]) + " > 0.25");
  check.expect(med_noise[2] <= 0.05,
               "final noise median " + fmt(med_noise[2]) + " > 0.05");
  if (check_trace_gap) {
    // Second-moment asymptotics: the gap is within 10% of s/n at 1600.
    check.expect(med_trace[2] <= 0.10 * 1.0 / 5.0,
                 "trace gap median " + fmt(med_trace[2]) + " > 0.02");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (model == NoiseModel::kIidGaussian) {
    check.expect(seconds < 300.0, "runtime " + fmt(seconds) + "s >= 5min");
  }
  std::ostringstream detail;
  detail << "medians at 1600: |da|=" << fmt(med_alpha[2])
         << " |db|=" << fmt(med_beta[2]) << " noise=" << fmt(med_noise[2])
         << " (" << fmt(seconds) << "s)";
  return {check.ok, check.ok ? detail.str() : check.log.str()};
}

Outcome criterion3() {
  return consistency_criterion(NoiseModel::kIidGaussian, true);
}

Outcome criterion4() {
  return consistency_criterion(NoiseModel::kColumnCorrelated, false);
}

// ---------------------------------------------------------------------------
// 5. Scaled-target recovery: U = delta*A gives (0, 1/delta) to 1e-12.
Outcome criterion5() {
  Check check;
  RngStream rng(555, 0);
  const DenseMatrix a = uniform_matrix(50, 80, rng);
  for (double delta : {0.5, 2.0, 10.0}) {
    const TargetMatrix u = target_from_matrix(
        linear_combination(delta, a, 0.0, a), TargetKind::kScaledKnown);
    const auto co = coefficients_asymptotic_oracle(a, 1.0, 5, u);
    check.expect(std::fabs(co.alpha) <= 1e-12,
                 "delta=" + fmt(delta) + ": alpha " + fmt(co.alpha));
    check.expect(std::fabs(co.beta - 1.0 / delta) <= 1e-12,
                 "delta=" + fmt(delta) + ": beta " + fmt(co.beta));
  }
  return {check.ok,
          check.ok ? "(0, 1/delta) exact for delta in {0.5, 2, 10}"
                   : check.log.str()};
}

// ---------------------------------------------------------------------------
// 6. Robust counterpart: feasibility, grid-oracle match, gamma monotonicity.
Outcome criterion6() {
  Check check;
  double worst_oracle_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream rng(6600 + trial, 0);
    const int p = 2 + trial % 3;  // 2..4
    const int m = 3 + static_cast<int>(rng.uniform(0.0, 3.0));
    const DenseMatrix a = uniform_matrix(m, p, rng);
    std::vector<double> b(m), c(p);
    for (double& v : b) v = rng.uniform(4.0, 6.0);
    for (double& v : c) v = rng.uniform(4.0, 6.0);
    const double gamma = rng.uniform(0.3, 1.2);

    const Solution sol = solve_robust({a, b, c, gamma});
    check.expect(sol.status == SolveStatus::kOptimal,
                 "trial " + std::to_string(trial) + ": not optimal");
    if (sol.status != SolveStatus::kOptimal) continue;
    check.expect(robust_max_violation(a, b, gamma, sol.x) <= 1e-7,
                 "trial " + std::to_string(trial) + ": infeasible solution");

    const double oracle = robust_grid_oracle(a, b, c, gamma);
    worst_oracle_gap =
        std::max(worst_oracle_gap, std::fabs(sol.objective - oracle));
    check.expect(std::fabs(sol.objective - oracle) <= 5e-3,
                 "trial " + std::to_string(trial) + ": objective " +
                     fmt(sol.objective) + " vs grid " + fmt(oracle));

    double previous = std::numeric_limits<double>::infinity();
    for (double g : {0.5 * gamma, gamma, 1.5 * gamma}) {
      const Solution monotone = solve_robust({a, b, c, g});
      check.expect(monotone.status == SolveStatus::kOptimal &&
                       monotone.objective <= previous + 1e-9,
                   "trial " + std::to_string(trial) +
                       ": objective increased with gamma");
      previous = monotone.objective;
    }
  }
  return {check.ok, check.ok ? "20 instances feasible, nonincreasing in "
                               "gamma, worst grid gap " +
                                   fmt(worst_oracle_gap)
                             : check.log.str()};
}

// ---------------------------------------------------------------------------
// 7. Vanishing noise: shrinkage degenerates to the nominal method.
Outcome criterion7() {
  Check check;
  ExperimentConfig config;
  config.gamma_factors.clear();
  config.n = 5;
  const CellParams cell{1.0, 300, 300, 1e-6};
  const auto records = run_replication(cell, 0, config);
  check.expect(records.size() == 2, "unexpected record count");
  const auto& nominal = records[0];
  const auto& shrunk = records[1];
  check.expect(nominal.status == RecordStatus::kOptimal &&
                   shrunk.status == RecordStatus::kOptimal,
               "solve failed");
  if (check.ok) {
    check.expect(*shrunk.alpha_hat >= 0.999,
                 "alpha " + fmt(*shrunk.alpha_hat) + " < 0.999");
    const double rel = std::fabs(*shrunk.rel_obj - *nominal.rel_obj) /
                       (1.0 + std::fabs(*nominal.rel_obj));
    check.expect(rel <= 1e-4, "objective gap " + fmt(rel) + " > 1e-4");
    return {check.ok, check.ok ? "alpha=" + fmt(*shrunk.alpha_hat) +
                                     ", objective gap " + fmt(rel)
                               : check.log.str()};
  }
  return {check.ok, check.log.str()};
}

// ---------------------------------------------------------------------------
// 8. Scaled reproduction of the main comparison trends.
Outcome criterion8() {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  ExperimentConfig config;
  config.sweep_mode = SweepMode::kFixedCVaryP;
  config.c_fixed = 0.5;
  config.p_range = {100, 300, 100};
  config.sigma_list = {0.5, 1.0, 2.0};
  config.gamma_factors = {0.2, 0.5, 0.8};
  config.n = 5;
  config.reps = 20;
  config.master_seed = 20260811;
  config.output_path = temp_file("acceptance_trends.csv");
  const SweepSummary summary = run_sweep(config);
  check.expect(summary.record_count == 3 * 3 * 20 * 5, "record count");
  check.expect(summary.solver_failures == 0, "solver failures present");

  const CsvFile records = load_csv(summary.csv_path);
  // mean viol_ratio per (p, sigma, method) and pooled |rel_obj| / times.
  std::map<std::tuple<int, double, std::string>, std::pair<double, int>>
      viol;
  std::map<std::pair<std::string, double>, std::pair<double, int>> abs_obj;
  std::map<std::string, std::pair<double, int>> times;
  std::map<int, std::map<std::string, std::pair<double, int>>> times_by_p;
  for (const auto& row : records.rows) {
    if (records.text(row, "status") != "Optimal") continue;
    const int p = static_cast<int>(records.number(row, "p"));
    const double sigma = records.number(row, "sigma");
    std::string method = records.text(row, "method");
    const double ratio = records.number(row, "viol_ratio");
    if (method == "robust") {
      method += records.text(row, "gamma_factor");
    } else {
      auto& cellv = viol[{p, sigma, method}];
      cellv.first += ratio;
      cellv.second += 1;
      auto& cello = abs_obj[{method, sigma}];
      cello.first += std::fabs(records.number(row, "rel_obj"));
      cello.second += 1;
    }
    const std::string family = records.text(row, "method");
    auto& cellt = times[family];
    cellt.first += records.number(row, "solve_time_ms");
    cellt.second += 1;
    auto& cellp = times_by_p[p][family];
    cellp.first += records.number(row, "solve_time_ms");
    cellp.second += 1;
  }
  const auto mean_of = [](const std::pair<double, int>& cell) {
    return cell.second ? cell.first / cell.second : std::nan("");
  };

  // (a) nominal violates heavily at sigma = 2; shrinkage always violates
  // less than nominal.
  for (int p : {100, 200, 300}) {
    const double nominal_ratio = mean_of(viol[{p, 2.0, "nominal"}]);
    check.expect(nominal_ratio > 0.3, "p=" + std::to_string(p) +
                                          ": nominal viol_ratio " +
                                          fmt(nominal_ratio) + " <= 0.3");
    for (double sigma : {0.5, 1.0, 2.0}) {
      const double nom = mean_of(viol[{p, sigma, "nominal"}]);
      const double shr = mean_of(viol[{p, sigma, "shrinkage"}]);
      check.expect(shr < nom, "p=" + std::to_string(p) +
                                  " sigma=" + fmt(sigma) + ": shrinkage " +
                                  fmt(shr) + " !< nominal " + fmt(nom));
    }
  }

  // (b) shrinkage's |rel_obj| moves less across sigma than nominal's.
  const auto sigma_range = [&](const std::string& method) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double sigma : {0.5, 1.0, 2.0}) {
      const double v = mean_of(abs_obj[{method, sigma}]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };
  const double nominal_spread = sigma_range("nominal");
  const double shrink_spread = sigma_range("shrinkage");
  check.expect(shrink_spread < nominal_spread,
               "spread " + fmt(shrink_spread) + " !< " + fmt(nominal_spread));

  // (c) solve-time ordering: shrinkage ~ nominal, both below robust.
  // The two linear methods solve LPs of identical dimensions; the smoothed
  // shrinkage matrix is better conditioned, so iteration counts (and thus
  // either wall or proxy time) can differ by up to ~2x. "Approximately
  // equal" is pinned as within a factor of 3 while robust sits orders
  // above both.
  const double t_nominal = mean_of(times["nominal"]);
  const double t_shrink = mean_of(times["shrinkage"]);
  const double t_robust = mean_of(times["robust"]);
  check.expect(t_shrink <= 3.0 * t_nominal && t_nominal <= 3.0 * t_shrink,
               "linear methods differ: " + fmt(t_nominal) + " vs " +
                   fmt(t_shrink));
  check.expect(t_nominal < t_robust && t_shrink < t_robust,
               "robust not slower: " + fmt(t_robust));
  {
    const double n300 = mean_of(times_by_p[300]["nominal"]);
    const double s300 = mean_of(times_by_p[300]["shrinkage"]);
    const double r300 = mean_of(times_by_p[300]["robust"]);
    check.expect(n300 < r300 && s300 < r300, "ordering fails at p=300");
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.expect(seconds < 1200.0, "runtime " + fmt(seconds) + "s >= 20min");
  std::remove(summary.csv_path.c_str());
  std::remove(summary.agg_path.c_str());
  std::ostringstream detail;
  detail << "spreads " << fmt(shrink_spread) << " < " << fmt(nominal_spread)
         << "; times " << fmt(t_nominal) << "/" << fmt(t_shrink) << "/"
         << fmt(t_robust) << " (" << fmt(seconds) << "s)";
  return {check.ok, check.ok ? detail.str() : check.log.str()};
}

// ---------------------------------------------------------------------------
// 9. The shrinkage advantage decays as c = m/p grows.
Outcome criterion9() {
  Check check;
  ExperimentConfig config;
  config.sweep_mode = SweepMode::kFixedPVaryC;
  config.p_fixed = 200;
  config.c_range = {0.5, 2.5, 0.5};
  config.sigma_list = {2.0};
  config.gamma_factors.clear();  // the comparison needs only the LP methods
  config.n = 5;
  config.reps = 20;
  config.master_seed = 90210;
  config.output_path = temp_file("acceptance_cs.csv");
  const SweepSummary summary = run_sweep(config);

  const CsvFile records = load_csv(summary.csv_path);
  std::map<double, std::pair<double, int>> nominal, shrink;
  for (const auto& row : records.rows) {
    if (records.text(row, "status") != "Optimal") continue;
    const double c = records.number(row, "c");
    const double ratio = records.number(row, "viol_ratio");
    auto& cell =
        records.text(row, "method") == "nominal" ? nominal[c] : shrink[c];
    cell.first += ratio;
    cell.second += 1;
  }
  std::vector<double> diffs;
  std::ostringstream seq;
  for (const auto& [c, cell] : nominal) {
    const auto& s = shrink[c];
    const double diff = s.first / s.second - cell.first / cell.second;
    diffs.push_back(diff);
    seq << (seq.str().empty() ? "" : ", ") << "c=" << fmt(c) << ": "
        << fmt(diff);
  }
  check.expect(diffs.size() == 5, "expected 5 c values");
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    check.expect(diffs[i] >= diffs[i - 1] - 1e-9,
                 "difference decreased between c values " +
                     std::to_string(i - 1) + " and " + std::to_string(i));
  }
  std::remove(summary.csv_path.c_str());
  std::remove(summary.agg_path.c_str());
  return {check.ok, check.ok ? "shrinkage-minus-nominal viol_ratio: " + seq.str()
                             : check.log.str()};
}

// ---------------------------------------------------------------------------
// 10. Byte-identical reruns, including under different worker counts.
Outcome criterion10() {
  Check check;
  ExperimentConfig config;
  config.sweep_mode = SweepMode::kFixedCVaryP;
  config.c_fixed = 0.5;
  config.p_range = {50, 100, 50};
  config.sigma_list = {0.5, 1.0};
  config.gamma_factors = {0.5};
  config.reps = 3;
  config.master_seed = 4242;

  std::vector<std::string> contents;
  std::vector<std::string> agg_contents;
  int run = 0;
  for (int workers : {1, 2, 4}) {
    config.workers = workers;
    config.output_path =
        temp_file("acceptance_det_" + std::to_string(run++) + ".csv");
    const SweepSummary summary = run_sweep(config);
    contents.push_back(slurp(summary.csv_path));
    agg_contents.push_back(slurp(summary.agg_path));
    std::remove(summary.csv_path.c_str());
    std::remove(summary.agg_path.c_str());
  }
  check.expect(contents[0] == contents[1] && contents[1] == contents[2],
               "record CSVs differ across worker counts");
  check.expect(agg_contents[0] == agg_contents[1] &&
                   agg_contents[1] == agg_contents[2],
               "aggregate CSVs differ across worker counts");
  return {check.ok, check.ok ? "identical bytes with 1, 2 and 4 workers"
                             : check.log.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }
  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8,
                             criterion9, criterion10};
  const char* names[] = {
      "finite-sample optimality vs numeric minimizer",
      "worked-example exactness",
      "estimator consistency (iid noise)",
      "estimator consistency (column-correlated noise)",
      "scaled-target recovery",
      "robust counterpart correctness",
      "degeneration to nominal at vanishing noise",
      "comparison-trend reproduction (scaled)",
      "large-c degradation",
      "byte-identical determinism",
  };
  bool all_ok = true;
  for (int i = 0; i < 10; ++i) {
    if (only != 0 && only != i + 1) continue;
    Outcome outcome;
    try {
      outcome = criteria[i]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s — %s\n", outcome.pass ? "PASS" : "FAIL",
                i + 1, names[i], outcome.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && outcome.pass;
  }
  return all_ok ? 0 : 1;
}
