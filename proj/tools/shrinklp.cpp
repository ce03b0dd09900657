// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
//
// CLI entry point. Subcommands:
//   simulate  run a Monte-Carlo sweep and write record + aggregate CSVs
//   plot      render SVG charts from an aggregated CSV
//   estimate  shrink a matrix from sample CSV files
//   generate  write a reproducible synthetic instance to disk
//
// Exit codes: 0 success, 2 configuration error, 3 solver-failure rate
// above 10% in a sweep.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "shrinklp/estimator.hpp"
#include "shrinklp/harness.hpp"
#include "shrinklp/matrix_io.hpp"
#include "shrinklp/scenario.hpp"
#include "shrinklp/svg_plot.hpp"

namespace {

using nlohmann::json;
using namespace shrinklp;

SweepRange parse_range(const std::string& text, const char* what) {
  SweepRange range;
  const auto first = text.find(':');
  if (first == std::string::npos) {
    range.start = range.stop = std::stod(text);
    range.step = 0.0;
    return range;
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos) {
    throw ConfigError(std::string(what) + ": expected scalar or start:stop:step");
  }
  range.start = std::stod(text.substr(0, first));
  range.stop = std::stod(text.substr(first + 1, second - first - 1));
  range.step = std::stod(text.substr(second + 1));
  return range;
}

NoiseModel parse_noise(const std::string& text) {
  if (text == "iid") return NoiseModel::kIidGaussian;
  if (text == "iid-uniform") return NoiseModel::kIidUniform;
  if (text == "col-corr") return NoiseModel::kColumnCorrelated;
  if (text == "row-corr") return NoiseModel::kRowCorrelated;
  throw ConfigError("unknown noise model: " + text);
}

CovarianceSpec parse_covariance(const std::string& text) {
  if (text.rfind("identity:", 0) == 0) {
    return CovarianceSpec::identity_scaled(std::stod(text.substr(9)));
  }
  if (text.rfind("diagonal:", 0) == 0) {
    const std::string rest = text.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("covariance: expected diagonal:<low>:<high>");
    }
    return CovarianceSpec::diagonal(std::stod(rest.substr(0, colon)),
                                    std::stod(rest.substr(colon + 1)));
  }
  if (text == "dense") return CovarianceSpec::dense_well_conditioned();
  throw ConfigError("unknown covariance spec: " + text);
}

void apply_json_config(const std::string& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  if (j.contains("mode")) {
    const std::string mode = j["mode"];
    if (mode == "fixed-c") {
      config.sweep_mode = SweepMode::kFixedCVaryP;
    } else if (mode == "fixed-p") {
      config.sweep_mode = SweepMode::kFixedPVaryC;
    } else {
      throw ConfigError("config: mode must be fixed-c or fixed-p");
    }
  }
  if (j.contains("c")) {
    const SweepRange r = parse_range(j["c"].get<std::string>(), "c");
    config.c_fixed = r.start;
    config.c_range = r;
  }
  if (j.contains("p")) {
    const SweepRange r = parse_range(j["p"].get<std::string>(), "p");
    config.p_fixed = static_cast<int>(r.start);
    config.p_range = r;
  }
  if (j.contains("sigma")) {
    config.sigma_list = j["sigma"].get<std::vector<double>>();
  }
  if (j.contains("gamma_factors")) {
    config.gamma_factors = j["gamma_factors"].get<std::vector<double>>();
  }
  if (j.contains("n")) config.n = j["n"];
  if (j.contains("reps")) config.reps = j["reps"];
  if (j.contains("noise")) config.noise_model = parse_noise(j["noise"]);
  if (j.contains("covariance")) {
    config.covariance = parse_covariance(j["covariance"].get<std::string>());
  }
  if (j.contains("clamp")) config.clamp = j["clamp"];
  if (j.contains("seed")) config.master_seed = j["seed"];
  if (j.contains("out")) config.output_path = j["out"];
  if (j.contains("workers")) config.workers = j["workers"];
  if (j.contains("wall_time") && j["wall_time"].get<bool>()) {
    config.timing = TimingMode::kWallClock;
  }
  if (j.contains("entry_low")) config.entry_low = j["entry_low"];
  if (j.contains("entry_high")) config.entry_high = j["entry_high"];
  if (j.contains("debug_dump_dir")) config.debug_dump_dir = j["debug_dump_dir"];
}

int run_simulate(std::vector<std::string> args) {
  CLI::App app{"run a Monte-Carlo comparison sweep"};
  std::string mode = "fixed-c";
  std::string c_text;
  std::string p_text;
  std::vector<double> sigma;
  std::vector<double> gamma_factors;
  int n = -1;
  int reps = -1;
  std::string noise;
  std::string covariance;
  std::string config_path;
  std::string profile;
  std::string out;
  std::optional<std::uint64_t> seed;
  int workers = -1;
  bool clamp = false;
  bool no_clamp = false;
  bool wall_time = false;
  std::string entry_range;
  std::string debug_dump;

  app.add_option("--mode", mode, "fixed-c (sweep p) or fixed-p (sweep c)");
  app.add_option("--c", c_text, "ratio m/p: scalar or start:stop:step");
  app.add_option("--p", p_text, "variable count: scalar or start:stop:step");
  app.add_option("--sigma", sigma, "noise levels")->delimiter(',');
  app.add_option("--gamma-factors", gamma_factors,
                 "robust radii as multiples of sigma")
      ->delimiter(',');
  app.add_option("--n", n, "samples per matrix");
  app.add_option("--reps", reps, "replications per cell");
  app.add_option("--noise", noise, "iid | iid-uniform | col-corr | row-corr");
  app.add_option("--cov", covariance,
                 "identity:<s> | diagonal:<lo>:<hi> | dense");
  app.add_option("--config", config_path, "JSON config (flags override it)");
  app.add_option("--profile", profile,
                 "desk (default, scaled down) or paper (full-size sweeps)");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "record CSV path");
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  app.add_flag("--clamp", clamp, "clamp alpha to [0,1] (default)");
  app.add_flag("--no-clamp", no_clamp, "use raw alpha even outside [0,1]");
  app.add_flag("--wall-time", wall_time,
               "record wall-clock ms instead of the deterministic work proxy");
  app.add_option("--entry-range", entry_range, "lo:hi for U(lo,hi) entries");
  app.add_option("--debug-dump", debug_dump,
                 "dump every solved problem and solution into this directory");

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits cleanly
  }

  ExperimentConfig config;
  if (!config_path.empty()) apply_json_config(config_path, config);

  if (!profile.empty()) {
    if (profile == "paper") {
      config.reps = 50;
      config.p_range = {100, 900, 100};
      config.c_range = {0.1, 2.8, 0.3};
    } else if (profile == "desk") {
      config.reps = 20;
      config.p_range = {100, 400, 100};
      config.c_range = {0.5, 2.5, 0.5};
    } else {
      throw ConfigError("profile must be desk or paper");
    }
  }

  if (mode == "fixed-c") {
    config.sweep_mode = SweepMode::kFixedCVaryP;
  } else if (mode == "fixed-p") {
    config.sweep_mode = SweepMode::kFixedPVaryC;
  } else {
    throw ConfigError("mode must be fixed-c or fixed-p");
  }
  if (!c_text.empty()) {
    const SweepRange r = parse_range(c_text, "c");
    config.c_fixed = r.start;
    config.c_range = r;
  }
  if (!p_text.empty()) {
    const SweepRange r = parse_range(p_text, "p");
    config.p_fixed = static_cast<int>(r.start);
    config.p_range = r;
  }
  if (!sigma.empty()) config.sigma_list = sigma;
  if (app.count("--gamma-factors")) config.gamma_factors = gamma_factors;
  if (n > 0) config.n = n;
  if (reps > 0) config.reps = reps;
  if (!noise.empty()) config.noise_model = parse_noise(noise);
  if (!covariance.empty()) config.covariance = parse_covariance(covariance);
  if (seed) config.master_seed = *seed;
  if (!out.empty()) config.output_path = out;
  if (workers >= 0) config.workers = workers;
  if (clamp) config.clamp = true;
  if (no_clamp) config.clamp = false;
  if (wall_time) config.timing = TimingMode::kWallClock;
  if (!entry_range.empty()) {
    const auto colon = entry_range.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("entry-range: expected lo:hi");
    }
    config.entry_low = std::stod(entry_range.substr(0, colon));
    config.entry_high = std::stod(entry_range.substr(colon + 1));
  }
  if (!debug_dump.empty()) config.debug_dump_dir = debug_dump;

  const SweepSummary summary = run_sweep(config);
  std::cerr << "wrote " << summary.record_count << " records to "
            << summary.csv_path << " (aggregates: " << summary.agg_path
            << ")\n";
  if (summary.solver_failures > 0) {
    std::cerr << summary.solver_failures << " solver failures ("
              << summary.failure_rate * 100.0 << "%)\n";
  }
  return summary.failure_rate > 0.10 ? 3 : 0;
}

int run_plot(std::vector<std::string> args) {
  CLI::App app{"render SVG charts from an aggregated sweep CSV"};
  std::string in_path;
  std::string out_dir = "plots";
  app.add_option("--in", in_path, "aggregated CSV (…_agg.csv)")->required();
  app.add_option("--out", out_dir, "output directory");
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits cleanly
  }
  const auto written = emit_plots(in_path, out_dir);
  std::cerr << "wrote " << written.size() << " SVG files to " << out_dir
            << "\n";
  return 0;
}

int run_estimate(std::vector<std::string> args) {
  CLI::App app{"shrink a matrix estimated from noisy sample CSVs"};
  std::vector<std::string> sample_paths;
  std::string target = "ones";
  std::string out = "a_star.csv";
  bool clamp = false;
  app.add_option("samples", sample_paths, "two or more sample CSV files")
      ->required();
  app.add_option("--target", target, "ones | file:<path>");
  app.add_option("--out", out, "output CSV for the shrunk matrix");
  app.add_flag("--clamp", clamp, "clamp alpha to [0,1]");
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits cleanly
  }

  std::vector<DenseMatrix> samples;
  samples.reserve(sample_paths.size());
  for (const std::string& path : sample_paths) {
    samples.push_back(read_matrix_csv(path));
  }
  const ObservationSet obs(std::move(samples), NoiseModelTag::kIid);

  TargetMatrix target_matrix = target_ones(obs.rows(), obs.cols());
  if (target != "ones") {
    if (target.rfind("file:", 0) != 0) {
      throw ConfigError("target must be 'ones' or 'file:<path>'");
    }
    DenseMatrix b = read_matrix_csv(target.substr(5));
    bool has_zero = false;
    for (double v : b.data()) {
      if (v == 0.0) has_zero = true;
    }
    target_matrix = target_from_matrix(
        std::move(b), has_zero ? TargetKind::kMasked : TargetKind::kScaledKnown);
  }

  const double noise = noise_level_hat(obs);
  const auto [a_star, coeffs] = shrunk_matrix(obs, target_matrix, clamp);
  write_matrix_csv(a_star, out);

  json report;
  report["alpha"] = coeffs.alpha;
  report["beta"] = coeffs.beta;
  report["clamped"] = coeffs.clamped;
  report["noise_level_hat"] = noise;
  std::cout << report.dump() << "\n";
  return 0;
}

int run_generate(std::vector<std::string> args) {
  CLI::App app{"generate a reproducible synthetic instance"};
  ScenarioSpec spec;
  std::string noise = "iid";
  std::string covariance;
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  std::string out_dir = "instance";
  app.add_option("--m", spec.m, "constraint count")->required();
  app.add_option("--p", spec.p, "variable count")->required();
  app.add_option("--n", spec.n, "samples");
  app.add_option("--sigma", spec.sigma, "noise level");
  app.add_option("--noise", noise, "iid | iid-uniform | col-corr | row-corr");
  app.add_option("--cov", covariance,
                 "identity:<s> | diagonal:<lo>:<hi> | dense");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--stream", stream, "stream id");
  app.add_option("--out-dir", out_dir, "output directory");
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits cleanly
  }
  spec.noise_model = parse_noise(noise);
  if (!covariance.empty()) spec.covariance = parse_covariance(covariance);
  spec.validate();

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  RngStream rng(seed, stream);
  const Instance instance = generate_instance(spec, rng);
  double noise_scale_truth = 0.0;
  const ObservationSet obs =
      generate_observations(instance.a_true, spec, rng, &noise_scale_truth);

  const auto path = [&](const std::string& name) {
    return (fs::path(out_dir) / name).string();
  };
  write_matrix_csv(instance.a_true, path("a_true.csv"));
  write_vector_csv(instance.b, path("b.csv"));
  write_vector_csv(instance.cost, path("cost.csv"));
  for (int k = 0; k < obs.count(); ++k) {
    write_matrix_csv(obs.samples()[k],
                     path("obs_" + std::to_string(k + 1) + ".csv"));
  }

  json manifest;
  manifest["m"] = spec.m;
  manifest["p"] = spec.p;
  manifest["n"] = spec.n;
  manifest["sigma"] = spec.sigma;
  manifest["noise"] = to_string(spec.noise_model);
  manifest["entry_low"] = spec.entry_low;
  manifest["entry_high"] = spec.entry_high;
  manifest["master_seed"] = seed;
  manifest["stream_id"] = stream;
  manifest["noise_scale_truth"] = noise_scale_truth;
  std::ofstream mf(path("manifest.json"), std::ios::binary);
  mf << manifest.dump(2) << "\n";

  std::cerr << "wrote instance to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "-h" || args[0] == "--help") {
    std::cout << "usage: shrinklp <simulate|plot|estimate|generate> [options]\n"
              << "  simulate  run a Monte-Carlo comparison sweep\n"
              << "  plot      render SVGs from an aggregated CSV\n"
              << "  estimate  shrink a matrix from sample CSVs\n"
              << "  generate  write a synthetic instance to disk\n";
    return args.empty() ? 2 : 0;
  }
  const std::string command = args[0];
  // CLI11 parses in reverse; keep positional order natural.
  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    if (command == "simulate") return run_simulate(rest);
    if (command == "plot") return run_plot(rest);
    if (command == "estimate") return run_estimate(rest);
    if (command == "generate") return run_generate(rest);
    std::cerr << "unknown subcommand: " << command << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
