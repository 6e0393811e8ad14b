// Acceptance checks. One line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbicc/bootstrap.hpp"
#include "dbicc/distances.hpp"
#include "dbicc/estimate.hpp"
#include "dbicc/experiments.hpp"
#include "dbicc/parallel.hpp"
#include "dbicc/simulation.hpp"
#include "dbicc/spearman_brown.hpp"
#include "oracles.hpp"

using namespace dbicc;
namespace fs = std::filesystem;

namespace {

const unsigned kThreads = default_thread_count();

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome point_consistency() {
  std::string d;
  bool ok = true;
  for (double rho : {0.2, 0.5, 0.8}) {
    PointExperimentConfig c;
    c.rho = rho;
    c.num_individuals = 70;
    c.reps = 500;
    c.threads = kThreads;
    const double big = run_point_experiment(c).mean;
    c.num_individuals = 10;
    const double small = run_point_experiment(c).mean;
    const bool here = std::abs(big - rho) <= 0.02 && (rho > 0.6 || small < rho);
    ok = ok && here;
    d += " rho=" + fmt("%.1f", rho) + " I70=" + fmt("%.4f", big) + " I10=" + fmt("%.4f", small);
  }
  return {ok, d};
}

Outcome coverage() {
  const double naive_ref[] = {91.6, 91.4, 90.6};
  const double corr_ref[] = {93.2, 92.0, 92.6};
  const double rhos[] = {0.2, 0.5, 0.8};
  std::string d;
  bool ok = true;
  for (int k = 0; k < 3; ++k) {
    CoverageExperimentConfig c;
    c.rho = rhos[k];
    c.num_individuals = 40;
    c.boot = 1200;
    c.reps = 500;
    c.threads = kThreads;
    const auto r = run_coverage_experiment(c);
    ok = ok && std::abs(r.naive_coverage - naive_ref[k]) <= 4.0 &&
         std::abs(r.corrected_coverage - corr_ref[k]) <= 4.0 &&
         r.corrected_coverage >= r.naive_coverage;
    d += " rho=" + fmt("%.1f", rhos[k]) + " N=" + fmt("%.1f", r.naive_coverage) + " C=" +
         fmt("%.1f", r.corrected_coverage);
  }
  return {ok, d};
}

Outcome bias_correction() {
  CoverageExperimentConfig c;
  c.rho = 0.5;
  c.num_individuals = 10;
  c.boot = 1200;
  c.reps = 100;
  c.threads = kThreads;
  const auto r = run_coverage_experiment(c);
  return {r.corrected_median_closer >= 0.80,
          " corrected median closer in " + fmt("%.0f", 100 * r.corrected_median_closer) +
              "% of replicates (need >= 80%)"};
}

SbExperimentResult sb(double phi) {
  SbExperimentConfig c;
  c.num_individuals = 25;
  c.replicates_per_individual = 2;
  c.dim = 40;
  c.reps = 20;
  c.phi = phi;
  c.threads = kThreads;
  return run_sb_experiment(c);
}

Outcome sb_slopes(const SbExperimentResult& iid) {
  const double cov = iid.covariance.mean_slope;
  const double cor = iid.correlation.mean_slope;
  const bool ok = std::abs(cov - 1) <= 0.05 && std::abs(cor - 1) <= 0.05 &&
                  iid.covariance.failed_curves == 0 && iid.correlation.failed_curves == 0;
  return {ok, " covariance=" + fmt("%.4f", cov) + " (sd " + fmt("%.4f", iid.covariance.sd_slope) +
                  ") correlation=" + fmt("%.4f", cor) + " (sd " + fmt("%.4f", iid.correlation.sd_slope) + ")"};
}

Outcome attenuation(const SbExperimentResult& iid) {
  const auto mid = sb(0.6);
  const auto high = sb(0.9);
  bool ok = true, ordered = true;
  std::string d;
  for (auto which : {&SbExperimentResult::covariance, &SbExperimentResult::correlation}) {
    const auto& a = iid.*which;
    const auto& b = mid.*which;
    const auto& c = high.*which;
    ok = ok && b.mean_slope > 0.85 && b.mean_slope < 1.0 && c.mean_slope < 0.85;
    for (std::size_t k = 0; k < a.mean_log_snr.size(); ++k)
      ordered = ordered && a.mean_log_snr[k] > b.mean_log_snr[k] && b.mean_log_snr[k] > c.mean_log_snr[k];
    d += std::string(which == &SbExperimentResult::covariance ? " covariance" : " correlation") +
         " phi0.6=" + fmt("%.4f", b.mean_slope) + " phi0.9=" + fmt("%.4f", c.mean_slope);
  }
  return {ok && ordered, d + " log SNR decreasing in phi at every m: " + (ordered ? "yes" : "no")};
}

Outcome delta_eps() {
  bool ok = true;
  std::string d;
  const std::pair<std::size_t, std::size_t> cases[] = {{2, 5}, {5, 20}, {10, 50}};
  std::uint64_t k = 0;
  for (const auto& [p, m] : cases) {
    auto pop_rng = make_stream(1, {k, 0});
    const Matrix wishart = random_correlation_population(1, p, p + 2, pop_rng).front();
    for (const Matrix& sigma : {Matrix(Matrix::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p))), wishart}) {
      auto rng = make_stream(1, {k, 1});
      const auto r = verify_delta_eps(sigma, m, 10000, rng);
      const double rel = std::abs(r.monte_carlo - r.analytic) / r.analytic;
      ok = ok && rel <= 0.05;
      d += " (" + std::to_string(p) + "," + std::to_string(m) + ")=" + fmt("%.4f", rel);
      ++k;
    }
  }
  return {ok, " relative errors" + d};
}

Outcome properties() {
  auto rng = make_stream(7);
  std::size_t failures = 0, checks = 0;
  auto expect = [&](bool c) {
    ++checks;
    if (!c) ++failures;
  };

  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> ni(2, 4), nj(1, 3);
    std::vector<std::size_t> counts(ni(rng));
    for (auto& c : counts) c = nj(rng);
    counts[0] = std::max<std::size_t>(counts[0], 2);
    const auto labels = oracle::labels_for(counts);
    const Matrix v = oracle::random_distances(labels.size(), 3, rng);
    const DistanceMatrix d(v, labels);
    const auto e = dbicc_point(d);
    expect(std::abs(e.msd_between - oracle::msd(v, labels, false)) <= 1e-12 * e.msd_between);
    expect(std::abs(e.msd_within - oracle::msd(v, labels, true)) <= 1e-12 * e.msd_within);
    expect(std::abs(dbicc_point(DistanceMatrix(3.7 * v, labels)).rho_hat - e.rho_hat) <= 1e-12);
    std::vector<std::size_t> perm(labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pv(v.rows(), v.cols());
    std::vector<GroupLabel> pl(labels.size());
    for (std::size_t a = 0; a < perm.size(); ++a) {
      pl[a] = labels[perm[a]];
      for (std::size_t b = 0; b < perm.size(); ++b)
        pv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            v(static_cast<Eigen::Index>(perm[a]), static_cast<Eigen::Index>(perm[b]));
    }
    expect(std::abs(dbicc_point(DistanceMatrix(pv, pl)).rho_hat - e.rho_hat) <= 1e-12);
    if (e.rho_hat > 0 && e.rho_hat < 1)
      expect(std::abs(snr(e.rho_hat) - (e.msd_between - e.msd_within) / e.msd_within) <=
             1e-10 * std::max(1.0, snr(e.rho_hat)));
  }

  {
    auto srng = make_stream(8);
    const auto s = gen_gaussian_sample(TrueScorePopulation::isotropic(0.5, 2, 30, 4), srng);
    const auto d = compute_distance_matrix(s, {});
    BootstrapOptions o;
    o.replicates = 1200;
    o.seed = 99;
    o.threads = 1;
    const auto one = bootstrap_dbicc(d, o);
    for (unsigned t : {2u, 5u, 16u}) {
      o.threads = t;
      expect(bootstrap_dbicc(d, o).replicate_estimates == one.replicate_estimates);
    }
  }

  std::uniform_real_distribution<double> u(0.0, 0.45);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix r = random_correlation_population(1, 8, 10, rng).front();
    const double a = u(rng), b = u(rng);
    const Matrix twice = soft_threshold(soft_threshold(r, a).matrix, b).matrix;
    expect((twice - soft_threshold(r, a + b).matrix).cwiseAbs().maxCoeff() <= 1e-14);
  }

  for (double rho1 : {0.01, 0.1, 0.3, 0.5, 0.7, 0.95})
    for (int m = 1; m <= 100; ++m)
      expect(std::abs(snr(classical_sb(rho1, m)) - m * snr(rho1)) <= 1e-12 * m * snr(rho1));

  return {failures == 0, " " + std::to_string(checks - failures) + "/" + std::to_string(checks) + " property checks hold"};
}

int sh(const std::string& cmd) { return std::system(cmd.c_str()); }

Outcome pipeline() {
  const fs::path dir = fs::temp_directory_path() / "dbicc_acceptance_scans";
  fs::remove_all(dir);
  const std::string exe = DBICC_EXE;
  std::string d;
  if (sh(exe + " simulate scans -I 25 -J 2 -p 333 -m 197 --seed 3 --out-dir " + dir.string() +
         " --out " + (dir.parent_path() / "dbicc_scans.json").string()) != 0)
    return {false, " scan generation failed"};
  const auto manifest = (dir / "manifest.csv").string();
  bool ok = true;
  for (const char* dist : {"l2", "l1", "corr"}) {
    const auto out = dir / (std::string("boot_") + dist + ".json");
    const int code = sh(exe + " bootstrap " + manifest + " --distance " + dist +
                        " --boot 1200 --seed 5 --out " + out.string());
    if (code != 0) return {false, std::string(" bootstrap failed for ") + dist};
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    const double rho = j["rho_hat"], lo = j["ci_low"], hi = j["ci_high"];
    ok = ok && std::isfinite(rho) && rho <= 1.0 && lo <= hi;
    d += std::string(" ") + dist + "=" + fmt("%.4f", rho) + " [" + fmt("%.3f", lo) + "," + fmt("%.3f", hi) + "]";
  }
  const auto sweep = dir / "sweep.csv";
  ok = ok && sh(exe + " sweep-threshold " + manifest + " --threshold-grid 0:0.2:0.1 --out " + sweep.string()) == 0;
  std::ifstream in(sweep);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  ok = ok && rows == 10;
  return {ok, d + " sweep rows=" + std::to_string(rows - 1)};
}

}  // namespace

int main() {
  std::printf("acceptance checks on %u thread(s)\n", kThreads);
  std::fflush(stdout);
  int failed = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string(" error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s:%s (%.1fs)\n", n, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  };

  report(1, "point-estimate consistency", point_consistency);
  report(2, "bootstrap coverage", coverage);
  report(3, "bias-corrected medians", bias_correction);
  const auto iid = sb(0.0);
  report(4, "SB slope", [&] { return sb_slopes(iid); });
  report(5, "autocorrelation attenuation", [&] { return attenuation(iid); });
  report(6, "delta-eps identity", delta_eps);
  report(7, "property suites", properties);
  report(8, "synthetic 197x333 pipeline", pipeline);
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
