#include "dbicc/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dbicc/bootstrap.hpp"
#include "dbicc/cli/json_writer.hpp"
#include "dbicc/estimate.hpp"
#include "dbicc/experiments.hpp"
#include "dbicc/simulation.hpp"

namespace dbicc::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct LoadedInput {
  std::optional<GroupedSample> sample;
  std::optional<DistanceInput> precomputed;
};

LoadedInput load_input(const RunConfig& config) {
  if (config.input.empty()) throw ConfigError("no input file given (--input)");
  InputFormat format = config.format;
  if (format == InputFormat::auto_detect) format = detect_format(config.input);
  if (config.columns && format != InputFormat::manifest) {
    throw ConfigError("--columns applies to time-series manifests only");
  }
  LoadedInput loaded;
  switch (format) {
    case InputFormat::vector:
      loaded.sample = read_vector_csv(config.input);
      break;
    case InputFormat::manifest:
      loaded.sample = read_timeseries_manifest(config.input, config.columns);
      break;
    case InputFormat::distance:
      if (config.groups.empty()) throw ConfigError("distance-matrix input needs --groups");
      loaded.precomputed = read_distance_input(config.input, config.groups);
      break;
    case InputFormat::auto_detect:
      break;
  }
  return loaded;
}

struct Distances {
  DistanceMatrix matrix;
  double mean_fraction_zeroed = 0.0;
};

Distances distances_for(const LoadedInput& loaded, const DistanceSpec& spec, unsigned threads) {
  if (loaded.precomputed) {
    if (spec.threshold) throw ConfigError("thresholds cannot be applied to a precomputed distance matrix");
    return {loaded.precomputed->matrix, 0.0};
  }
  const auto prepared = prepare_payloads(*loaded.sample, spec, threads);
  return {compute_distance_matrix(prepared, loaded.sample->labels(), spec.kind, threads),
          prepared.mean_fraction_zeroed};
}

DistanceKind single_distance(const RunConfig& config) {
  if (config.distances.size() != 1) throw ConfigError("give exactly one --distance");
  return config.distances.front();
}

ojson threshold_json(const std::optional<double>& t) { return t ? ojson(*t) : ojson(nullptr); }

ojson estimate_json(const DbiccEstimate& e, DistanceKind kind, const std::optional<double>& t) {
  ojson j;
  j["rho_hat"] = e.rho_hat;
  j["msd_within"] = e.msd_within;
  j["msd_between"] = e.msd_between;
  j["n_within_pairs"] = e.n_within_pairs;
  j["n_between_pairs"] = e.n_between_pairs;
  j["distance"] = std::string(to_string(kind));
  j["threshold"] = threshold_json(t);
  return j;
}

ojson fit_json(const LineFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"slope_se", fit.slope_se},
          {"intercept_se", fit.intercept_se},
          {"n", fit.n},
          {"degenerate", fit.degenerate}};
}

ojson sb_summary_json(const SbSummary& s) {
  return {{"mean_slope", s.mean_slope},
          {"sd_slope", s.sd_slope},
          {"mean_intercept", s.mean_intercept},
          {"mean_log_snr", s.mean_log_snr},
          {"failed_curves", s.failed_curves}};
}

ojson simulate_point(const RunConfig& c) {
  PointExperimentConfig pc{c.rho, c.num_individuals, c.replicates_per_individual, c.dim,
                           c.reps, c.seed, c.threads};
  const auto r = run_point_experiment(pc);
  return {{"experiment", "point"},
          {"rho", c.rho},
          {"truth", r.truth},
          {"individuals", c.num_individuals},
          {"replicates", c.replicates_per_individual},
          {"dim", c.dim},
          {"reps", c.reps},
          {"seed", c.seed},
          {"mean", r.mean},
          {"sd", r.sd},
          {"estimates", r.estimates}};
}

ojson simulate_coverage(const RunConfig& c) {
  CoverageExperimentConfig cc;
  cc.rho = c.rho;
  cc.num_individuals = c.num_individuals;
  cc.replicates_per_individual = c.replicates_per_individual;
  cc.dim = c.dim;
  cc.boot = c.boot;
  cc.reps = c.reps;
  cc.level = c.level;
  cc.seed = c.seed;
  cc.threads = c.threads;
  const auto r = run_coverage_experiment(cc);
  ojson reps = ojson::array();
  for (const auto& rep : r.replicates) {
    reps.push_back({{"point", rep.point},
                    {"naive_ci", {rep.naive_low, rep.naive_high}},
                    {"corrected_ci", {rep.corrected_low, rep.corrected_high}},
                    {"naive_median", rep.naive_median},
                    {"corrected_median", rep.corrected_median},
                    {"naive_degenerate", rep.naive_degenerate},
                    {"corrected_degenerate", rep.corrected_degenerate},
                    {"boot_seed", rep.boot_seed}});
  }
  return {{"experiment", "coverage"},
          {"rho", c.rho},
          {"truth", r.truth},
          {"individuals", c.num_individuals},
          {"replicates", c.replicates_per_individual},
          {"dim", c.dim},
          {"B", c.boot},
          {"reps", c.reps},
          {"level", c.level},
          {"seed", c.seed},
          {"naive_coverage", r.naive_coverage},
          {"corrected_coverage", r.corrected_coverage},
          {"corrected_median_closer", r.corrected_median_closer},
          {"outer_replicates", reps}};
}

ojson simulate_sb(const RunConfig& c) {
  SbExperimentConfig sc;
  sc.num_individuals = c.num_individuals;
  sc.replicates_per_individual = c.replicates_per_individual;
  sc.dim = c.dim;
  sc.wishart_df = c.wishart_df;
  sc.m_grid = c.m_grid;
  sc.phi = c.phi;
  sc.reps = c.reps;
  sc.offset = c.sb_offset;
  sc.distance = single_distance(c);
  sc.seed = c.seed;
  sc.threads = c.threads;
  const auto r = run_sb_experiment(sc);

  ojson reps = ojson::array();
  for (const auto& rep : r.replicates) {
    ojson item;
    item["rho_covariance"] = rep.rho_covariance;
    item["rho_correlation"] = rep.rho_correlation;
    item["covariance_fit"] = rep.covariance_curve ? fit_json(rep.covariance_curve->fit) : ojson(nullptr);
    item["correlation_fit"] = rep.correlation_curve ? fit_json(rep.correlation_curve->fit) : ojson(nullptr);
    reps.push_back(std::move(item));
  }
  if (!c.csv_out.empty()) {
    std::ofstream csv(c.csv_out);
    if (!csv) throw InputParseError(c.csv_out, 0, 0, "cannot open file for writing");
    csv << "replicate,summary,m,rho_hat,x,y\n";
    for (std::size_t k = 0; k < r.replicates.size(); ++k) {
      const auto& rep = r.replicates[k];
      for (const auto* curve : {&rep.covariance_curve, &rep.correlation_curve}) {
        if (!*curve) continue;
        const char* name = curve == &rep.covariance_curve ? "covariance" : "correlation";
        for (const auto& p : (*curve)->points) {
          csv << k << ',' << name << ',' << p.m << ',' << format_double(p.rho_hat) << ','
              << format_double(p.x) << ',' << format_double(p.y) << '\n';
        }
      }
    }
  }
  return {{"experiment", "sb"},
          {"phi", c.phi},
          {"individuals", c.num_individuals},
          {"replicates", c.replicates_per_individual},
          {"dim", c.dim},
          {"wishart_df", c.wishart_df == 0 ? c.dim : c.wishart_df},
          {"m_grid", r.m_grid},
          {"reps", c.reps},
          {"sb_offset", c.sb_offset},
          {"distance", std::string(to_string(sc.distance))},
          {"seed", c.seed},
          {"covariance", sb_summary_json(r.covariance)},
          {"correlation", sb_summary_json(r.correlation)},
          {"curves", reps}};
}

Matrix sigma_for(const RunConfig& c, Rng& rng) {
  if (c.sigma == "identity") {
    const auto p = static_cast<Eigen::Index>(c.dim);
    return Matrix::Identity(p, p);
  }
  const std::size_t df = c.wishart_df == 0 ? c.dim : c.wishart_df;
  return random_correlation_population(1, c.dim, df, rng).front();
}

ojson simulate_delta_eps(const RunConfig& c) {
  auto rng = make_stream(c.seed, {0});
  const Matrix sigma = sigma_for(c, rng);
  auto mc_rng = make_stream(c.seed, {1});
  const auto r = verify_delta_eps(sigma, c.time_points, c.reps, mc_rng);
  return {{"experiment", "delta-eps"},
          {"dim", c.dim},
          {"m", c.time_points},
          {"reps", c.reps},
          {"sigma", c.sigma},
          {"seed", c.seed},
          {"monte_carlo", r.monte_carlo},
          {"standard_error", r.standard_error},
          {"analytic", r.analytic},
          {"relative_error", std::abs(r.monte_carlo - r.analytic) / r.analytic}};
}

ojson simulate_assumptions(const RunConfig& c) {
  auto rng = make_stream(c.seed, {0});
  const std::size_t df = c.wishart_df == 0 ? c.dim : c.wishart_df;
  const auto r = check_true_score_assumptions(c.dim, df, c.time_points, c.reps, rng);
  return {{"experiment", "assumptions"},
          {"dim", c.dim},
          {"wishart_df", df},
          {"m", c.time_points},
          {"reps", c.reps},
          {"seed", c.seed},
          {"shared_mean", r.shared_mean},
          {"shared_se", r.shared_se},
          {"distinct_mean", r.distinct_mean},
          {"distinct_se", r.distinct_se},
          {"cross_mean", r.cross_mean},
          {"cross_se", r.cross_se}};
}

ojson simulate_scans(const RunConfig& c) {
  if (c.out_dir.empty()) throw ConfigError("scans need --out-dir");
  fs::create_directories(c.out_dir);
  const std::size_t df = c.wishart_df == 0 ? c.dim : c.wishart_df;
  auto rng = make_stream(c.seed, {0});
  const auto sigmas = random_correlation_population(c.num_individuals, c.dim, df, rng);
  const fs::path manifest = c.out_dir / "manifest.csv";
  std::ofstream out(manifest);
  if (!out) throw InputParseError(manifest, 0, 0, "cannot open file for writing");
  out << "individual,replicate,path\n";
  for (std::size_t i = 0; i < c.num_individuals; ++i) {
    const GaussianSampler sampler(sigmas[i]);
    for (std::size_t j = 0; j < c.replicates_per_individual; ++j) {
      auto scan_rng = make_stream(c.seed, {1, i, j});
      const Matrix x = gen_mvn_timeseries(sampler, c.time_points, c.phi, scan_rng);
      const std::string name = "scan_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + ".csv";
      write_numeric_csv(c.out_dir / name, x, 10);
      out << "s" << i + 1 << ',' << j + 1 << ',' << name << '\n';
    }
  }
  return {{"experiment", "scans"},
          {"individuals", c.num_individuals},
          {"replicates", c.replicates_per_individual},
          {"time_points", c.time_points},
          {"dim", c.dim},
          {"wishart_df", df},
          {"phi", c.phi},
          {"seed", c.seed},
          {"manifest", manifest.string()}};
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out);
  if (!file) throw InputParseError(config.out, 0, 0, "cannot open file for writing");
  file << text;
}

}  // namespace

void validate_config(const RunConfig& c) {
  if (!(c.level > 0.0 && c.level < 1.0)) throw ConfigError("--level must lie in (0, 1)");
  if (c.boot == 0) throw ConfigError("--boot must be positive");
  if (c.sb_offset != 0 && c.sb_offset != 1) throw ConfigError("--sb-offset must be 0 or 1");
  if (c.threshold && !(*c.threshold >= 0.0 && *c.threshold <= 1.0)) {
    throw ConfigError("--threshold must lie in [0, 1]");
  }
  for (double t : c.threshold_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("threshold grid values must lie in [0, 1]");
  }
  if (c.distances.empty()) throw ConfigError("no distance given");
  if (c.command == "simulate") {
    if (!(c.phi >= 0.0 && c.phi < 1.0)) throw ConfigError("--phi must lie in [0, 1)");
    if (c.reps == 0) throw ConfigError("--reps must be positive");
    if (c.dim == 0) throw ConfigError("--dim must be positive");
    if (c.num_individuals < 2) throw ConfigError("--individuals must be at least 2");
    if (c.replicates_per_individual < 1) throw ConfigError("--replicates must be positive");
    if ((c.experiment == "point" || c.experiment == "coverage") &&
        !(c.rho > 0.0 && c.rho < 1.0)) {
      throw ConfigError("--rho must lie in (0, 1)");
    }
    if (c.sigma != "identity" && c.sigma != "wishart") {
      throw ConfigError("--sigma must be identity or wishart");
    }
    if (c.wishart_df != 0 && c.wishart_df < c.dim) throw ConfigError("--df must be >= --dim");
    for (std::size_t m : c.m_grid) {
      if (m < 3 || static_cast<int>(m) <= c.sb_offset) throw ConfigError("m-grid values must be >= 3");
    }
  }
}

std::vector<double> parse_threshold_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad threshold grid '" + spec + "' (expected a:b:step)");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw ConfigError("bad threshold grid '" + spec + "' (expected a:b:step, step > 0, a <= b)");
  }
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double v = parts[0] + static_cast<double>(k) * parts[2];
    if (v > parts[1] + 1e-9 * parts[2]) break;
    grid.push_back(std::min(v, parts[1]));
  }
  return grid;
}

ojson cmd_estimate(const RunConfig& config) {
  validate_config(config);
  const DistanceSpec spec{single_distance(config), config.threshold};
  const auto loaded = load_input(config);
  const auto d = distances_for(loaded, spec, config.threads);
  return estimate_json(dbicc_point(d.matrix), spec.kind, spec.threshold);
}

ojson cmd_bootstrap(const RunConfig& config) {
  validate_config(config);
  const DistanceSpec spec{single_distance(config), config.threshold};
  const auto loaded = load_input(config);
  const auto d = distances_for(loaded, spec, config.threads);

  BootstrapOptions options;
  options.replicates = config.boot;
  options.corrected = config.corrected;
  options.level = config.level;
  options.seed = config.seed;
  options.threads = config.threads;
  const auto result = bootstrap_dbicc(d.matrix, options);

  if (!config.replicate_log.empty()) {
    const auto reps = bootstrap_replicates(d.matrix, config.boot, config.seed, config.threads);
    std::ofstream log(config.replicate_log);
    if (!log) throw InputParseError(config.replicate_log, 0, 0, "cannot open file for writing");
    log << "replicate,has_duplicates,naive,corrected,naive_degenerate,corrected_degenerate\n";
    for (std::size_t r = 0; r < reps.size(); ++r) {
      log << r << ',' << reps[r].has_duplicates << ',' << format_double(reps[r].naive) << ','
          << format_double(reps[r].corrected) << ',' << reps[r].naive_degenerate << ','
          << reps[r].corrected_degenerate << '\n';
    }
  }

  auto j = estimate_json(result.point, spec.kind, spec.threshold);
  j["ci_low"] = result.ci_low;
  j["ci_high"] = result.ci_high;
  j["level"] = result.level;
  j["B"] = result.B;
  j["corrected"] = result.corrected;
  j["seed"] = result.seed;
  j["n_degenerate"] = result.n_degenerate;
  j["warnings"] = result.warnings;
  return j;
}

std::string cmd_sweep_threshold(const RunConfig& config) {
  validate_config(config);
  const auto loaded = load_input(config);
  if (loaded.precomputed) {
    throw ConfigError("threshold sweeps need time-series or matrix payloads, not a distance matrix");
  }
  if (loaded.sample->kind() == PayloadKind::vector) {
    throw MetricMismatchError("threshold sweeps need time-series or matrix payloads, got vectors");
  }
  std::vector<double> grid = config.threshold_grid;
  if (grid.empty()) grid = config.threshold ? std::vector<double>{*config.threshold}
                                            : parse_threshold_grid("0:0.5:0.05");
  std::ostringstream csv;
  csv << "distance,lambda,avg_fraction_zeroed,rho_hat,status\n";
  for (const auto kind : config.distances) {
    for (const double lambda : grid) {
      const DistanceSpec spec{kind, lambda};
      const auto prepared = prepare_payloads(*loaded.sample, spec, config.threads);
      csv << to_string(kind) << ',' << format_double(lambda) << ','
          << format_double(prepared.mean_fraction_zeroed) << ',';
      try {
        const auto d = compute_distance_matrix(prepared, loaded.sample->labels(), kind, config.threads);
        csv << format_double(dbicc_point(d).rho_hat) << ",ok\n";
      } catch (const Error& e) {
        csv << "NA," << e.name() << '\n';
      }
    }
  }
  return csv.str();
}

ojson cmd_simulate(const RunConfig& config) {
  validate_config(config);
  const auto& e = config.experiment;
  if (e == "point") return simulate_point(config);
  if (e == "coverage") return simulate_coverage(config);
  if (e == "sb") return simulate_sb(config);
  if (e == "delta-eps") return simulate_delta_eps(config);
  if (e == "assumptions") return simulate_assumptions(config);
  if (e == "scans") return simulate_scans(config);
  throw ConfigError("unknown experiment '" + e + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::vector<std::string> distance_names;
  std::string format_name = "auto";
  std::string columns_spec;
  std::string grid_spec;
  std::string input_path, groups_path, out_path, csv_path, log_path, out_dir;

  CLI::App app{"Distance-based intraclass correlation (dbICC): estimation, bootstrap "
               "intervals, threshold sweeps and simulation experiments."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dbicc 1.0.0");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    sub->add_option("--threads", config.threads, "worker cap (0 = all cores); never changes results")
        ->capture_default_str();
    sub->add_option("--out", out_path, "output file (default stdout)");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input,--input", input_path, "vector CSV, time-series manifest or distance matrix")
        ->required();
    sub->add_option("--groups", groups_path, "row,individual,replicate file for distance input");
    sub->add_option("--format", format_name, "auto | vector | distance | manifest")
        ->check(CLI::IsMember({"auto", "vector", "distance", "manifest"}))
        ->capture_default_str();
    sub->add_option("--columns", columns_spec, "0-based scan columns to keep, e.g. 0,4,10-20");
    sub->add_option("--distance", distance_names, "l2 | l1 | corr")
        ->check(CLI::IsMember({"l2", "l1", "corr"}));
  };

  auto* estimate = app.add_subcommand("estimate", "point estimate of the dbICC");
  add_input(estimate);
  add_common(estimate);
  estimate->add_option("--threshold", config.threshold, "soft threshold applied to matrix payloads");

  auto* boot = app.add_subcommand("bootstrap", "dbICC with a bootstrap percentile interval");
  add_input(boot);
  add_common(boot);
  boot->add_option("--threshold", config.threshold, "soft threshold applied to matrix payloads");
  boot->add_option("--boot", config.boot, "bootstrap replicates B")->capture_default_str();
  boot->add_option("--level", config.level, "confidence level, e.g. 0.95")->capture_default_str();
  boot->add_flag("--corrected,!--naive", config.corrected,
                 "exclude duplicated-individual blocks from between sums (default)");
  boot->add_option("--replicate-log", log_path, "CSV of naive and corrected estimates per replicate");

  auto* sweep = app.add_subcommand("sweep-threshold", "dbICC across a soft-threshold grid");
  add_input(sweep);
  add_common(sweep);
  auto* grid_opt = sweep->add_option("--threshold-grid", grid_spec, "a:b:step (default 0:0.5:0.05)");
  sweep->add_option("--threshold", config.threshold, "single threshold")->excludes(grid_opt);

  auto* sim = app.add_subcommand("simulate", "simulation experiments");
  add_common(sim);
  sim->add_option("experiment", config.experiment,
                  "point | coverage | sb | delta-eps | assumptions | scans")
      ->required()
      ->check(CLI::IsMember({"point", "coverage", "sb", "delta-eps", "assumptions", "scans"}));
  sim->add_option("--rho", config.rho, "population dbICC")->capture_default_str();
  sim->add_option("-I,--individuals", config.num_individuals, "individuals")->capture_default_str();
  sim->add_option("-J,--replicates", config.replicates_per_individual, "replicates per individual")
      ->capture_default_str();
  sim->add_option("-p,--dim", config.dim, "payload dimension")->capture_default_str();
  sim->add_option("--df", config.wishart_df, "Wishart degrees of freedom (0 = dim)");
  sim->add_option("--phi", config.phi, "VAR(1) lag-1 coefficient")->capture_default_str();
  sim->add_option("--reps", config.reps, "outer replicates")->capture_default_str();
  sim->add_option("-m,--time-points", config.time_points, "time points per scan")->capture_default_str();
  sim->add_option("--boot", config.boot, "bootstrap replicates B")->capture_default_str();
  sim->add_option("--level", config.level, "confidence level")->capture_default_str();
  sim->add_option("--m-grid", config.m_grid, "comma-separated intensities")->delimiter(',');
  sim->add_option("--sb-offset", config.sb_offset, "0: log m, 1: log(m - 1)")->capture_default_str();
  sim->add_option("--distance", distance_names, "l2 | l1 | corr")->check(CLI::IsMember({"l2", "l1", "corr"}));
  sim->add_option("--sigma", config.sigma, "identity | wishart (delta-eps)")->capture_default_str();
  sim->add_option("--csv", csv_path, "plot-ready CSV of SB curve points");
  sim->add_option("--out-dir", out_dir, "directory for generated scans");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    config.input = input_path;
    config.groups = groups_path;
    config.out = out_path;
    config.csv_out = csv_path;
    config.replicate_log = log_path;
    config.out_dir = out_dir;
    config.format = parse_input_format(format_name);
    if (!columns_spec.empty()) config.columns = parse_index_list(columns_spec);
    if (!distance_names.empty()) {
      config.distances.clear();
      for (const auto& name : distance_names) config.distances.push_back(parse_distance_kind(name));
    } else if (sweep->parsed()) {
      config.distances = {DistanceKind::l2_vec, DistanceKind::l1_vec, DistanceKind::corr_of_corr};
    }
    if (!grid_spec.empty()) config.threshold_grid = parse_threshold_grid(grid_spec);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (estimate->parsed()) {
      config.command = "estimate";
      write_output(config, dump_json(cmd_estimate(config)) + "\n", out);
    } else if (boot->parsed()) {
      config.command = "bootstrap";
      write_output(config, dump_json(cmd_bootstrap(config)) + "\n", out);
    } else if (sweep->parsed()) {
      config.command = "sweep-threshold";
      write_output(config, cmd_sweep_threshold(config), out);
    } else if (sim->parsed()) {
      config.command = "simulate";
      write_output(config, dump_json(cmd_simulate(config)) + "\n", out);
    }
  } catch (const InputParseError& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kComputationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationError;
  }
  return kSuccess;
}

}  // namespace dbicc::cli
