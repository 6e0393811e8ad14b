#include "dbicc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbicc/errors.hpp"

namespace dbicc {

namespace {

Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> z;
  Matrix out(rows, cols);
  for (Eigen::Index k = 0; k < out.size(); ++k) out.data()[k] = z(rng);
  return out;
}

struct RunningMean {
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += static_cast<long double>(v) * v;
    ++n;
  }
  double mean() const { return static_cast<double>(sum / n); }
  double se() const {
    if (n < 2) return 0.0;
    const long double m = sum / n;
    const long double var = (sum_sq - n * m * m) / (n - 1);
    return static_cast<double>(std::sqrt(std::max(0.0L, var) / n));
  }
};

}  // namespace

GaussianSampler::GaussianSampler(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
    throw InputShapeError("covariance must be a non-empty square matrix");
  }
  if (!sigma.allFinite()) throw NonFiniteError("covariance contains NaN or Inf");
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) {
    throw FactorizationError("covariance is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw FactorizationError("covariance is not positive definite");
  }
  factor_ = llt.matrixL();
  for (Eigen::Index k = 0; k < factor_.rows(); ++k) {
    if (!(factor_(k, k) > 0.0)) throw FactorizationError("covariance is singular");
  }
}

Vector GaussianSampler::draw(Rng& rng) const {
  std::normal_distribution<double> z;
  Vector v(dim());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = z(rng);
  return factor_.triangularView<Eigen::Lower>() * v;
}

Matrix GaussianSampler::draw_rows(Eigen::Index m, Rng& rng) const {
  const Matrix z = standard_normal(m, dim(), rng);
  return z * factor_.transpose();
}

TrueScorePopulation TrueScorePopulation::isotropic(double rho, std::size_t p,
                                                   std::size_t num_individuals,
                                                   std::size_t replicates) {
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0, 1)");
  if (p == 0) throw ParameterError("dimension must be positive");
  const double c = (1.0 - rho) / rho;
  const auto dim = static_cast<Eigen::Index>(p);
  return {Matrix::Identity(dim, dim), c * Matrix::Identity(dim, dim), num_individuals,
          replicates};
}

void ConnectivityPopulation::validate() const {
  if (!(phi >= 0.0 && phi < 1.0)) throw ParameterError("phi must lie in [0, 1)");
  if (time_points < 2) throw ParameterError("need at least 2 time points");
  if (sigmas.empty()) throw ParameterError("population has no covariances");
  for (const auto& s : sigmas) {
    if (s.rows() != sigmas.front().rows() || s.cols() != sigmas.front().cols()) {
      throw InputShapeError("population covariances differ in shape");
    }
    GaussianSampler check(s);
  }
}

GroupedSample gen_gaussian_sample(const TrueScorePopulation& pop, Rng& rng) {
  if (pop.num_individuals < 2) throw InsufficientGroupsError("need at least 2 individuals");
  if (pop.replicates < 2) throw InsufficientReplicatesError("need at least 2 replicates");
  if (pop.sigma_t.rows() != pop.sigma_eps.rows()) {
    throw InputShapeError("true-score and error covariances differ in dimension");
  }
  const GaussianSampler truth(pop.sigma_t);
  const GaussianSampler noise(pop.sigma_eps);
  std::vector<IndividualRecord> individuals;
  individuals.reserve(pop.num_individuals);
  for (std::size_t i = 0; i < pop.num_individuals; ++i) {
    IndividualRecord rec{std::to_string(i + 1), {}};
    const Vector t = truth.draw(rng);
    for (std::size_t j = 0; j < pop.replicates; ++j) rec.replicates.emplace_back(t + noise.draw(rng));
    individuals.push_back(std::move(rec));
  }
  return GroupedSample(std::move(individuals), PayloadKind::vector);
}

Matrix gen_mvn_timeseries(const GaussianSampler& innovations, std::size_t m, double phi,
                          Rng& rng) {
  if (!(phi >= 0.0 && phi < 1.0)) throw ParameterError("phi must lie in [0, 1)");
  if (m < 2) throw ParameterError("need at least 2 time points");
  Matrix x = innovations.draw_rows(static_cast<Eigen::Index>(m), rng);
  if (phi == 0.0) return x;
  x.row(0) /= std::sqrt(1.0 - phi * phi);
  for (Eigen::Index t = 1; t < x.rows(); ++t) x.row(t) += phi * x.row(t - 1);
  return x;
}

Matrix gen_mvn_timeseries(const Matrix& sigma, std::size_t m, double phi, Rng& rng) {
  return gen_mvn_timeseries(GaussianSampler(sigma), m, phi, rng);
}

Matrix gen_sample_cov(const Matrix& x) {
  if (x.rows() < 2) throw InsufficientDataError("sample covariance needs at least 2 rows");
  const Matrix centered = x.rowwise() - x.colwise().mean();
  Matrix s = centered.transpose() * centered / static_cast<double>(x.rows() - 1);
  // Symmetrize exactly; the product can differ in the last bit across triangles.
  const Matrix sym = 0.5 * (s + s.transpose());
  return sym;
}

Matrix covariance_to_correlation(const Matrix& s) {
  if (s.rows() != s.cols()) throw InputShapeError("covariance must be square");
  Vector inv_sd(s.rows());
  for (Eigen::Index k = 0; k < s.rows(); ++k) {
    if (!(s(k, k) > 0.0)) {
      throw DegenerateInputError("variable " + std::to_string(k) + " has zero variance");
    }
    inv_sd(k) = 1.0 / std::sqrt(s(k, k));
  }
  Matrix r = inv_sd.asDiagonal() * s * inv_sd.asDiagonal();
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    r(k, k) = 1.0;
    for (Eigen::Index l = 0; l < k; ++l) {
      const double v = std::clamp(r(k, l), -1.0, 1.0);
      r(k, l) = v;
      r(l, k) = v;
    }
  }
  return r;
}

std::vector<Matrix> random_correlation_population(std::size_t num_individuals, std::size_t p,
                                                  std::size_t df, Rng& rng) {
  if (p == 0) throw ParameterError("dimension must be positive");
  if (df < p) throw ParameterError("Wishart degrees of freedom must be >= p");
  std::vector<Matrix> out;
  out.reserve(num_individuals);
  for (std::size_t i = 0; i < num_individuals; ++i) {
    const Matrix g = standard_normal(static_cast<Eigen::Index>(df), static_cast<Eigen::Index>(p), rng);
    const Matrix w = g.transpose() * g / static_cast<double>(df);
    out.push_back(covariance_to_correlation(0.5 * (w + w.transpose())));
  }
  return out;
}

double delta_eps_analytic(const Matrix& sigma, std::size_t m) {
  if (m < 2) throw ParameterError("need m >= 2");
  const double tr = sigma.trace();
  const double tr_sq = (sigma * sigma).trace();
  return 2.0 * (tr * tr + tr_sq) / static_cast<double>(m - 1);
}

DeltaEpsCheck verify_delta_eps(const Matrix& sigma, std::size_t m, std::size_t n_rep, Rng& rng) {
  if (n_rep < 2) throw ParameterError("need at least 2 Monte Carlo replicates");
  const double analytic = delta_eps_analytic(sigma, m);
  const GaussianSampler sampler(sigma);
  const auto rows = static_cast<Eigen::Index>(m);
  RunningMean acc;
  for (std::size_t r = 0; r < n_rep; ++r) {
    const Matrix s1 = gen_sample_cov(sampler.draw_rows(rows, rng));
    const Matrix s2 = gen_sample_cov(sampler.draw_rows(rows, rng));
    acc.add((s1 - s2).squaredNorm());
  }
  return {acc.mean(), acc.se(), analytic};
}

AssumptionCheck check_true_score_assumptions(std::size_t p, std::size_t df, std::size_t m,
                                             std::size_t n_rep, Rng& rng) {
  if (n_rep < 2) throw ParameterError("need at least 2 Monte Carlo replicates");
  const auto rows = static_cast<Eigen::Index>(m);
  RunningMean shared, distinct, cross;
  for (std::size_t r = 0; r < n_rep; ++r) {
    const auto sigmas = random_correlation_population(2, p, df, rng);
    const GaussianSampler a(sigmas[0]);
    const GaussianSampler b(sigmas[1]);
    const Matrix e_a1 = gen_sample_cov(a.draw_rows(rows, rng)) - sigmas[0];
    const Matrix e_a2 = gen_sample_cov(a.draw_rows(rows, rng)) - sigmas[0];
    const Matrix e_b = gen_sample_cov(b.draw_rows(rows, rng)) - sigmas[1];
    shared.add((e_a1 - e_a2).squaredNorm());
    distinct.add((e_a1 - e_b).squaredNorm());
    cross.add(((sigmas[0] - sigmas[1]).array() * (e_a1 - e_b).array()).sum());
  }
  return {shared.mean(), shared.se(), distinct.mean(), distinct.se(), cross.mean(), cross.se()};
}

}  // namespace dbicc
