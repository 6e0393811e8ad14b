#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dbicc/distances.hpp"
#include "dbicc/spearman_brown.hpp"

namespace dbicc {

// Monte Carlo experiment runners. Every random draw comes from a stream
// addressed by (seed, replicate, ...), so results do not depend on `threads`.

struct PointExperimentConfig {
  double rho = 0.5;
  std::size_t num_individuals = 70;
  std::size_t replicates_per_individual = 4;
  std::size_t dim = 2;
  std::size_t reps = 500;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct PointExperimentResult {
  double truth = 0.0;
  std::vector<double> estimates;
  double mean = 0.0;
  double sd = 0.0;
};

/// Point estimates of the dbICC for isotropic Gaussian vectors, Euclidean
/// distance, Sigma_T = I and Sigma_eps = (1 - rho) / rho * I.
PointExperimentResult run_point_experiment(const PointExperimentConfig& config);

struct CoverageExperimentConfig {
  double rho = 0.5;
  std::size_t num_individuals = 40;
  std::size_t replicates_per_individual = 4;
  std::size_t dim = 2;
  std::size_t boot = 1200;
  std::size_t reps = 500;
  double level = 0.95;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct CoverageReplicate {
  double point = 0.0;
  double naive_low = 0.0, naive_high = 0.0;
  double corrected_low = 0.0, corrected_high = 0.0;
  double naive_median = 0.0;
  double corrected_median = 0.0;
  std::size_t naive_degenerate = 0;
  std::size_t corrected_degenerate = 0;
  std::uint64_t boot_seed = 0;
};

struct CoverageExperimentResult {
  double truth = 0.0;
  std::vector<CoverageReplicate> replicates;
  double naive_coverage = 0.0;      ///< percent of intervals containing truth
  double corrected_coverage = 0.0;  ///< percent
  /// Fraction of replicates whose corrected bootstrap median is strictly
  /// closer to the truth than the naive one.
  double corrected_median_closer = 0.0;
};

/// Naive and corrected percentile intervals from the same resampling draws.
CoverageExperimentResult run_coverage_experiment(const CoverageExperimentConfig& config);

enum class MatrixSummary { covariance, correlation };

struct SbExperimentConfig {
  std::size_t num_individuals = 25;
  std::size_t replicates_per_individual = 2;
  std::size_t dim = 40;
  std::size_t wishart_df = 0;  ///< 0 means dim
  std::vector<std::size_t> m_grid;  ///< empty means default_m_grid()
  double phi = 0.0;
  std::size_t reps = 20;
  int offset = 1;
  DistanceKind distance = DistanceKind::l2_vec;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct SbCurveReplicate {
  /// rho_hat per m-grid entry, for covariance and correlation summaries of
  /// the same simulated series.
  std::vector<double> rho_covariance;
  std::vector<double> rho_correlation;
  std::optional<SbCurve> covariance_curve;
  std::optional<SbCurve> correlation_curve;
};

struct SbSummary {
  double mean_slope = 0.0;
  double sd_slope = 0.0;
  double mean_intercept = 0.0;
  std::vector<double> mean_log_snr;  ///< per m, over replicates with rho_hat in (0, 1)
  std::size_t failed_curves = 0;
};

struct SbExperimentResult {
  std::vector<std::size_t> m_grid;
  std::vector<SbCurveReplicate> replicates;
  SbSummary covariance;
  SbSummary correlation;
};

/// Log-log SNR curves for sample covariance and correlation matrices of
/// VAR(1) (or IID, phi = 0) Gaussian series. Each curve replicate draws a
/// fresh Sigma_i collection that stays fixed across the m grid.
SbExperimentResult run_sb_experiment(const SbExperimentConfig& config);

/// `count` integers from lo to hi, equally spaced on the log scale.
std::vector<std::size_t> default_m_grid(std::size_t lo = 25, std::size_t hi = 197,
                                        std::size_t count = 8);

}  // namespace dbicc
