#include "dbicc/experiments.hpp"

#include <cmath>
#include <numeric>

#include "dbicc/bootstrap.hpp"
#include "dbicc/core_model.hpp"
#include "dbicc/errors.hpp"
#include "dbicc/estimate.hpp"
#include "dbicc/parallel.hpp"
#include "dbicc/simulation.hpp"

namespace dbicc {

namespace {

std::pair<double, double> mean_sd(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return {mean, sd};
}

DistanceMatrix distances_of(std::vector<Matrix> payloads, std::size_t num_individuals,
                            std::size_t per_individual, DistanceKind kind) {
  std::vector<IndividualRecord> individuals(num_individuals);
  for (std::size_t i = 0; i < num_individuals; ++i) {
    individuals[i].id = std::to_string(i + 1);
    for (std::size_t j = 0; j < per_individual; ++j) {
      individuals[i].replicates.push_back(std::move(payloads[i * per_individual + j]));
    }
  }
  const GroupedSample sample(std::move(individuals), PayloadKind::matrix);
  return compute_distance_matrix(sample, DistanceSpec{kind, std::nullopt});
}

SbSummary summarize_curves(const std::vector<SbCurveReplicate>& reps, std::size_t grid_size,
                           bool correlation) {
  SbSummary out;
  std::vector<double> slopes, intercepts;
  std::vector<double> sum(grid_size, 0.0);
  std::vector<std::size_t> count(grid_size, 0);
  for (const auto& rep : reps) {
    const auto& curve = correlation ? rep.correlation_curve : rep.covariance_curve;
    const auto& rho = correlation ? rep.rho_correlation : rep.rho_covariance;
    if (curve) {
      slopes.push_back(curve->fit.slope);
      intercepts.push_back(curve->fit.intercept);
    } else {
      ++out.failed_curves;
    }
    for (std::size_t k = 0; k < grid_size; ++k) {
      if (rho[k] > 0.0 && rho[k] < 1.0) {
        sum[k] += std::log(rho[k] / (1.0 - rho[k]));
        ++count[k];
      }
    }
  }
  std::tie(out.mean_slope, out.sd_slope) = mean_sd(slopes);
  out.mean_intercept = mean_sd(intercepts).first;
  out.mean_log_snr.resize(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    out.mean_log_snr[k] = count[k] ? sum[k] / static_cast<double>(count[k]) : std::nan("");
  }
  return out;
}

}  // namespace

PointExperimentResult run_point_experiment(const PointExperimentConfig& config) {
  const auto pop = TrueScorePopulation::isotropic(config.rho, config.dim, config.num_individuals,
                                                  config.replicates_per_individual);
  PointExperimentResult out;
  out.truth = population_dbicc_gaussian(pop.sigma_t.trace(), pop.sigma_eps.trace());
  out.estimates.resize(config.reps);
  parallel_for(config.reps, config.threads, [&](std::size_t r) {
    auto rng = make_stream(config.seed, {r});
    const auto sample = gen_gaussian_sample(pop, rng);
    const auto d = compute_distance_matrix(sample, {});
    out.estimates[r] = dbicc_point(d).rho_hat;
  });
  std::tie(out.mean, out.sd) = mean_sd(out.estimates);
  return out;
}

CoverageExperimentResult run_coverage_experiment(const CoverageExperimentConfig& config) {
  const auto pop = TrueScorePopulation::isotropic(config.rho, config.dim, config.num_individuals,
                                                  config.replicates_per_individual);
  CoverageExperimentResult out;
  out.truth = population_dbicc_gaussian(pop.sigma_t.trace(), pop.sigma_eps.trace());
  out.replicates.resize(config.reps);
  parallel_for(config.reps, config.threads, [&](std::size_t r) {
    auto rng = make_stream(config.seed, {r, 0});
    const auto sample = gen_gaussian_sample(pop, rng);
    const auto d = compute_distance_matrix(sample, {});
    BootstrapOptions options;
    options.replicates = config.boot;
    options.level = config.level;
    options.seed = make_stream(config.seed, {r, 1})();
    options.threads = 1;
    const auto [naive, corrected] = bootstrap_both(d, options);
    auto& rep = out.replicates[r];
    rep.point = naive.point.rho_hat;
    rep.naive_low = naive.ci_low;
    rep.naive_high = naive.ci_high;
    rep.corrected_low = corrected.ci_low;
    rep.corrected_high = corrected.ci_high;
    rep.naive_median = median(naive.replicate_estimates);
    rep.corrected_median = median(corrected.replicate_estimates);
    rep.naive_degenerate = naive.n_degenerate;
    rep.corrected_degenerate = corrected.n_degenerate;
    rep.boot_seed = options.seed;
  });
  std::size_t naive_hits = 0, corrected_hits = 0, closer = 0;
  for (const auto& rep : out.replicates) {
    naive_hits += rep.naive_low <= out.truth && out.truth <= rep.naive_high;
    corrected_hits += rep.corrected_low <= out.truth && out.truth <= rep.corrected_high;
    closer += std::abs(rep.corrected_median - out.truth) < std::abs(rep.naive_median - out.truth);
  }
  const auto n = static_cast<double>(out.replicates.size());
  out.naive_coverage = 100.0 * static_cast<double>(naive_hits) / n;
  out.corrected_coverage = 100.0 * static_cast<double>(corrected_hits) / n;
  out.corrected_median_closer = static_cast<double>(closer) / n;
  return out;
}

std::vector<std::size_t> default_m_grid(std::size_t lo, std::size_t hi, std::size_t count) {
  if (lo < 2 || hi <= lo || count < 2) throw ParameterError("invalid m grid bounds");
  std::vector<std::size_t> grid;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(count - 1);
    const auto m = static_cast<std::size_t>(std::llround(std::exp(a + t * (b - a))));
    if (grid.empty() || m > grid.back()) grid.push_back(m);
  }
  return grid;
}

SbExperimentResult run_sb_experiment(const SbExperimentConfig& config) {
  SbExperimentResult out;
  out.m_grid = config.m_grid.empty() ? default_m_grid() : config.m_grid;
  const std::size_t df = config.wishart_df == 0 ? config.dim : config.wishart_df;
  const std::size_t num_i = config.num_individuals;
  const std::size_t per_i = config.replicates_per_individual;
  if (num_i < 2) throw InsufficientGroupsError("need at least 2 individuals");
  if (per_i < 2) throw InsufficientReplicatesError("need at least 2 replicates per individual");
  if (!(config.phi >= 0.0 && config.phi < 1.0)) throw ParameterError("phi must lie in [0, 1)");
  for (std::size_t m : out.m_grid) {
    if (m < 3 || static_cast<int>(m) <= config.offset) {
      throw ParameterError("every m must be >= 3 and exceed the SB offset");
    }
  }

  const std::size_t grid_size = out.m_grid.size();
  out.replicates.resize(config.reps);
  std::vector<std::vector<GaussianSampler>> samplers(config.reps);
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    auto rng = make_stream(config.seed, {rep, 0});
    for (const auto& s : random_correlation_population(num_i, config.dim, df, rng)) {
      samplers[rep].emplace_back(s);
    }
    out.replicates[rep].rho_covariance.assign(grid_size, 0.0);
    out.replicates[rep].rho_correlation.assign(grid_size, 0.0);
  }

  // One task per (curve replicate, m).
  parallel_for(config.reps * grid_size, config.threads, [&](std::size_t task) {
    const std::size_t rep = task / grid_size;
    const std::size_t k = task % grid_size;
    std::vector<Matrix> covs, cors;
    covs.reserve(num_i * per_i);
    cors.reserve(num_i * per_i);
    for (std::size_t i = 0; i < num_i; ++i) {
      for (std::size_t j = 0; j < per_i; ++j) {
        auto rng = make_stream(config.seed, {rep, k + 1, i, j});
        const Matrix x = gen_mvn_timeseries(samplers[rep][i], out.m_grid[k], config.phi, rng);
        Matrix s = gen_sample_cov(x);
        cors.push_back(covariance_to_correlation(s));
        covs.push_back(std::move(s));
      }
    }
    out.replicates[rep].rho_covariance[k] =
        dbicc_point(distances_of(std::move(covs), num_i, per_i, config.distance)).rho_hat;
    out.replicates[rep].rho_correlation[k] =
        dbicc_point(distances_of(std::move(cors), num_i, per_i, config.distance)).rho_hat;
  });

  for (auto& rep : out.replicates) {
    std::vector<std::pair<double, double>> cov_est, cor_est;
    for (std::size_t k = 0; k < grid_size; ++k) {
      const auto m = static_cast<double>(out.m_grid[k]);
      cov_est.emplace_back(m, rep.rho_covariance[k]);
      cor_est.emplace_back(m, rep.rho_correlation[k]);
    }
    try {
      rep.covariance_curve = build_sb_curve(cov_est, config.offset);
    } catch (const InsufficientDataError&) {
    }
    try {
      rep.correlation_curve = build_sb_curve(cor_est, config.offset);
    } catch (const InsufficientDataError&) {
    }
  }
  out.covariance = summarize_curves(out.replicates, grid_size, false);
  out.correlation = summarize_curves(out.replicates, grid_size, true);
  return out;
}

}  // namespace dbicc
