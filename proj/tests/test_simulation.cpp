#include <doctest.h>

#include <cmath>

#include "dbicc/errors.hpp"
#include "dbicc/estimate.hpp"
#include "dbicc/simulation.hpp"

using namespace dbicc;

namespace {

Matrix sigma3() {
  Matrix s(3, 3);
  s << 2.0, 0.5, 0.3,
       0.5, 1.0, -0.2,
       0.3, -0.2, 1.5;
  return s;
}

double rel_frob(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("gaussian sampler") {
  const GaussianSampler g(sigma3());
  CHECK(rel_frob(g.factor() * g.factor().transpose(), sigma3()) < 1e-14);

  auto rng = make_stream(51);
  const Matrix x = g.draw_rows(100000, rng);
  CHECK(rel_frob(gen_sample_cov(x), sigma3()) < 0.02);

  Matrix bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(GaussianSampler{bad}, FactorizationError);
  Matrix asym(2, 2);
  asym << 1, 0.1, 0.2, 1;
  CHECK_THROWS_AS(GaussianSampler{asym}, FactorizationError);
  CHECK_THROWS_AS(GaussianSampler{Matrix::Zero(2, 2)}, FactorizationError);
}

TEST_CASE("true score population") {
  const auto pop = TrueScorePopulation::isotropic(0.2, 2, 5, 4);
  CHECK(pop.sigma_eps(0, 0) == doctest::Approx(4.0));
  CHECK(population_dbicc_gaussian(pop.sigma_t.trace(), pop.sigma_eps.trace()) == doctest::Approx(0.2));
  CHECK_THROWS_AS(TrueScorePopulation::isotropic(1.0, 2, 5, 4), ParameterError);

  auto a = make_stream(52), b = make_stream(52);
  const auto s1 = gen_gaussian_sample(pop, a);
  const auto s2 = gen_gaussian_sample(pop, b);
  CHECK(s1.num_individuals() == 5);
  CHECK(s1.replicate_counts() == std::vector<std::size_t>(5, 4));
  CHECK(s1.individuals()[3].replicates[2] == s2.individuals()[3].replicates[2]);
  CHECK(s1.individuals()[0].id == "1");
}

TEST_CASE("c = 1 recovers 0.5") {
  auto rng = make_stream(53);
  const auto s = gen_gaussian_sample(TrueScorePopulation::isotropic(0.5, 2, 500, 4), rng);
  CHECK(std::abs(dbicc_point(compute_distance_matrix(s, {})).rho_hat - 0.5) <= 0.03);
}

TEST_CASE("iid series") {
  auto rng = make_stream(54);
  const Matrix x = gen_mvn_timeseries(sigma3(), 100000, 0.0, rng);
  CHECK(x.rows() == 100000);
  CHECK(rel_frob(gen_sample_cov(x), sigma3()) < 0.02);
  CHECK_THROWS_AS(gen_mvn_timeseries(sigma3(), 10, 1.0, rng), ParameterError);
}

TEST_CASE("var(1) autocorrelation and stationarity") {
  auto rng = make_stream(55);
  const Matrix one = Matrix::Identity(1, 1);
  const Matrix x = gen_mvn_timeseries(one, 100000, 0.9, rng);
  const double mean = x.col(0).mean();
  double num = 0, den = 0;
  for (Eigen::Index t = 0; t < x.rows(); ++t) {
    den += (x(t, 0) - mean) * (x(t, 0) - mean);
    if (t > 0) num += (x(t, 0) - mean) * (x(t - 1, 0) - mean);
  }
  CHECK(std::abs(num / den - 0.9) <= 0.02);

  auto rng2 = make_stream(56);
  const double phi = 0.6;
  const Matrix y = gen_mvn_timeseries(sigma3(), 200000, phi, rng2);
  CHECK(rel_frob(gen_sample_cov(y), sigma3() / (1 - phi * phi)) < 0.03);

  // First rows are already stationary: check across many short series.
  auto rng3 = make_stream(57);
  Matrix firsts(20000, 3);
  for (Eigen::Index k = 0; k < firsts.rows(); ++k)
    firsts.row(k) = gen_mvn_timeseries(sigma3(), 2, phi, rng3).row(0);
  CHECK(rel_frob(gen_sample_cov(firsts), sigma3() / (1 - phi * phi)) < 0.04);
}

TEST_CASE("sample covariance") {
  Matrix x(3, 2);
  x << 1, 2, 3, 4, 5, 9;
  Matrix expect(2, 2);
  expect << 4, 7, 7, 13;
  CHECK(rel_frob(gen_sample_cov(x), expect) < 1e-15);

  Matrix same(2, 3);
  same << 1, 2, 3, 1, 2, 3;
  CHECK(gen_sample_cov(same) == Matrix::Zero(3, 3));
  CHECK_THROWS_AS(gen_sample_cov(x.topRows(1)), InsufficientDataError);

  auto rng = make_stream(58);
  const GaussianSampler g(sigma3());
  Matrix mean = Matrix::Zero(3, 3);
  for (int k = 0; k < 10000; ++k) mean += gen_sample_cov(g.draw_rows(5, rng));
  mean /= 10000.0;
  CHECK(rel_frob(mean, sigma3()) < 0.02);
}

TEST_CASE("covariance to correlation") {
  const Matrix r = covariance_to_correlation(sigma3());
  CHECK(r(0, 0) == 1.0);
  CHECK(r(0, 1) == doctest::Approx(0.5 / std::sqrt(2.0)));
  Matrix z = sigma3();
  z.row(1).setZero();
  z.col(1).setZero();
  CHECK_THROWS_AS(covariance_to_correlation(z), DegenerateInputError);
}

TEST_CASE("random correlation population") {
  auto rng = make_stream(59);
  const auto pop = random_correlation_population(4, 6, 6, rng);
  CHECK(pop.size() == 4);
  for (const auto& r : pop) {
    CHECK((r.diagonal().array() - 1.0).abs().maxCoeff() < 1e-14);
    CHECK((r - r.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_NOTHROW(GaussianSampler{r});
  }
  CHECK(pop[0] != pop[1]);
  CHECK_THROWS_AS(random_correlation_population(2, 6, 5, rng), ParameterError);
}

TEST_CASE("delta eps") {
  CHECK(delta_eps_analytic(Matrix::Identity(2, 2), 5) == doctest::Approx(3.0));
  auto rng = make_stream(60);
  const auto c = verify_delta_eps(Matrix::Identity(2, 2), 5, 10000, rng);
  CHECK(c.analytic == doctest::Approx(3.0));
  CHECK(std::abs(c.monte_carlo - c.analytic) / c.analytic < 0.05);
  CHECK(c.standard_error > 0.0);
  CHECK_THROWS_AS(verify_delta_eps(Matrix::Identity(2, 2), 1, 100, rng), ParameterError);
}

TEST_CASE("true score assumptions for covariances") {
  auto rng = make_stream(61);
  const auto a = check_true_score_assumptions(5, 5, 50, 4000, rng);
  // Same Sigma or different Sigma: errors have the same expected spread.
  CHECK(std::abs(a.shared_mean - a.distinct_mean) < 4 * std::hypot(a.shared_se, a.distinct_se));
  CHECK(std::abs(a.cross_mean) < 4 * a.cross_se);
}
