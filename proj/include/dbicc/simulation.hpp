#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dbicc/core_model.hpp"
#include "dbicc/random.hpp"
#include "dbicc/types.hpp"

namespace dbicc {

/// Draws N(0, Sigma) vectors through a Cholesky factor of Sigma.
/// Throws FactorizationError when Sigma is not symmetric positive definite;
/// no jitter is ever added.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Matrix& sigma);

  Eigen::Index dim() const { return factor_.rows(); }
  const Eigen::MatrixXd& factor() const { return factor_; }

  Vector draw(Rng& rng) const;
  /// m independent draws as the rows of an m x p matrix.
  Matrix draw_rows(Eigen::Index m, Rng& rng) const;

 private:
  Eigen::MatrixXd factor_;
};

/// X_ij = T_i + eps_ij with T_i ~ N(0, sigma_t), eps_ij ~ N(0, sigma_eps).
struct TrueScorePopulation {
  Matrix sigma_t;
  Matrix sigma_eps;
  std::size_t num_individuals = 0;
  std::size_t replicates = 0;

  /// Isotropic population of dimension p with Sigma_T = I and
  /// Sigma_eps = c I, c = (1 - rho) / rho, so the population dbICC is rho.
  static TrueScorePopulation isotropic(double rho, std::size_t p, std::size_t num_individuals,
                                       std::size_t replicates);
};

/// Per-individual covariances for time-series generation.
struct ConnectivityPopulation {
  std::vector<Matrix> sigmas;
  std::size_t time_points = 0;
  double phi = 0.0;  ///< lag-1 coefficient, 0 = IID

  void validate() const;
};

GroupedSample gen_gaussian_sample(const TrueScorePopulation& pop, Rng& rng);

/// x_t = phi x_{t-1} + u_t, u_t ~ N(0, Sigma) IID, x_1 drawn from the
/// stationary law N(0, Sigma / (1 - phi^2)). phi = 0 gives IID rows.
Matrix gen_mvn_timeseries(const GaussianSampler& innovations, std::size_t m, double phi, Rng& rng);
Matrix gen_mvn_timeseries(const Matrix& sigma, std::size_t m, double phi, Rng& rng);

/// Unbiased sample covariance (divisor m - 1) of the rows of X.
Matrix gen_sample_cov(const Matrix& x);

/// D^{-1/2} S D^{-1/2} with D = diag(S). Throws DegenerateInputError on a
/// zero variance.
Matrix covariance_to_correlation(const Matrix& s);

/// I correlation-scaled Wishart matrices: W = G'G / df with G a df x p
/// standard normal matrix, rescaled to unit diagonal. df >= p.
std::vector<Matrix> random_correlation_population(std::size_t num_individuals, std::size_t p,
                                                  std::size_t df, Rng& rng);

struct DeltaEpsCheck {
  double monte_carlo = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;
};

/// Expected squared Frobenius distance between the errors S_1 - Sigma and
/// S_2 - Sigma of two independent m-sample covariances, by simulation and by
/// the Wishart identity 2[(tr Sigma)^2 + tr(Sigma^2)] / (m - 1).
DeltaEpsCheck verify_delta_eps(const Matrix& sigma, std::size_t m, std::size_t n_rep, Rng& rng);

/// Closed form 2[(tr Sigma)^2 + tr(Sigma^2)] / (m - 1).
double delta_eps_analytic(const Matrix& sigma, std::size_t m);

struct AssumptionCheck {
  double shared_mean = 0.0;    ///< E||eps_ij1 - eps_ij2||^2, same Sigma_i
  double shared_se = 0.0;
  double distinct_mean = 0.0;  ///< E||eps_i1j1 - eps_i2j2||^2, independent Sigmas
  double distinct_se = 0.0;
  double cross_mean = 0.0;     ///< E<Sigma_i1 - Sigma_i2, eps_i1j1 - eps_i2j2>
  double cross_se = 0.0;
};

/// Monte Carlo check of the two true-score assumptions for sample covariances
/// when the Sigma_i come from random_correlation_population(p, df).
AssumptionCheck check_true_score_assumptions(std::size_t p, std::size_t df, std::size_t m,
                                             std::size_t n_rep, Rng& rng);

}  // namespace dbicc
