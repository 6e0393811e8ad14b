#include "dbicc/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "dbicc/errors.hpp"
#include "dbicc/parallel.hpp"

namespace dbicc {

std::vector<std::size_t> resample_individuals(std::size_t num_individuals, Rng& rng) {
  if (num_individuals < 2) {
    throw InsufficientGroupsError("bootstrap needs at least 2 individuals, got " +
                                  std::to_string(num_individuals));
  }
  std::uniform_int_distribution<std::size_t> pick(0, num_individuals - 1);
  std::vector<std::size_t> pi(num_individuals);
  for (auto& v : pi) v = pick(rng);
  return pi;
}

BlockSums::BlockSums(const DistanceMatrix& d) {
  const std::size_t num = d.num_individuals();
  counts_ = d.replicate_counts();
  within_.assign(num, 0.0);
  cross_.assign(num * num, 0.0);
  for (std::size_t i = 0; i < num; ++i) {
    const auto& rows_i = d.members(i);
    long double w = 0.0L;
    for (std::size_t x = 0; x < rows_i.size(); ++x) {
      for (std::size_t y = x + 1; y < rows_i.size(); ++y) {
        const double v = d(rows_i[x], rows_i[y]);
        w += static_cast<long double>(v * v);
      }
    }
    within_[i] = static_cast<double>(w);
    cross_[i * num + i] = static_cast<double>(2.0L * w);
    for (std::size_t k = i + 1; k < num; ++k) {
      long double s = 0.0L;
      for (std::size_t a : rows_i) {
        for (std::size_t b : d.members(k)) {
          const double v = d(a, b);
          s += static_cast<long double>(v * v);
        }
      }
      cross_[i * num + k] = static_cast<double>(s);
      cross_[k * num + i] = static_cast<double>(s);
    }
  }
}

ReplicateEstimate BlockSums::evaluate(std::span<const std::size_t> pi) const {
  long double w_sum = 0.0L, nb_sum = 0.0L, cb_sum = 0.0L;
  std::size_t w_den = 0, nb_den = 0, cb_den = 0;
  ReplicateEstimate out;
  for (std::size_t i1 = 0; i1 < pi.size(); ++i1) {
    const std::size_t a = pi[i1];
    const std::size_t ja = counts_[a];
    w_sum += within_[a];
    w_den += ja * (ja - 1) / 2;
    for (std::size_t i2 = i1 + 1; i2 < pi.size(); ++i2) {
      const std::size_t b = pi[i2];
      const long double block = cross(a, b);
      const std::size_t den = ja * counts_[b];
      nb_sum += block;
      nb_den += den;
      if (a == b) {
        out.has_duplicates = true;
      } else {
        cb_sum += block;
        cb_den += den;
      }
    }
  }

  auto rho = [&](long double b_sum, std::size_t b_den, bool& degenerate) {
    if (w_den == 0 || b_den == 0 || !(b_sum > 0.0L)) {
      degenerate = true;
      return 0.0;
    }
    const long double msd_w = w_sum / static_cast<long double>(w_den);
    const long double msd_b = b_sum / static_cast<long double>(b_den);
    return static_cast<double>(1.0L - msd_w / msd_b);
  };
  out.naive = rho(nb_sum, nb_den, out.naive_degenerate);
  out.corrected = rho(cb_sum, cb_den, out.corrected_degenerate);
  return out;
}

std::vector<ReplicateEstimate> bootstrap_replicates(const DistanceMatrix& d, std::size_t B,
                                                    std::uint64_t seed, unsigned threads) {
  const BlockSums sums(d);
  std::vector<ReplicateEstimate> out(B);
  parallel_for(B, threads, [&](std::size_t r) {
    auto rng = make_stream(seed, {r});
    const auto pi = resample_individuals(sums.num_individuals(), rng);
    out[r] = sums.evaluate(pi);
  });
  return out;
}

namespace {

BootstrapResult summarize(const DbiccEstimate& point, std::span<const ReplicateEstimate> reps,
                          const BootstrapOptions& options, bool corrected) {
  BootstrapResult res;
  res.point = point;
  res.level = options.level;
  res.corrected = corrected;
  res.seed = options.seed;
  res.B = options.replicates;
  res.replicate_estimates.reserve(reps.size());
  for (const auto& rep : reps) {
    const bool degenerate = corrected ? rep.corrected_degenerate : rep.naive_degenerate;
    if (degenerate) {
      ++res.n_degenerate;
      continue;
    }
    res.replicate_estimates.push_back(corrected ? rep.corrected : rep.naive);
  }
  if (options.replicates < 100) {
    res.warnings.push_back("B = " + std::to_string(options.replicates) +
                           " is below 100; percentile limits will be unstable");
  }
  if (res.n_degenerate > 0) {
    res.warnings.push_back(std::to_string(res.n_degenerate) +
                           " degenerate replicate(s) excluded");
  }
  std::tie(res.ci_low, res.ci_high) = percentile_ci(res.replicate_estimates, options.level);
  return res;
}

void check_options(const BootstrapOptions& options) {
  if (options.replicates == 0) throw ParameterError("number of bootstrap replicates must be positive");
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw ParameterError("confidence level must lie in (0, 1)");
  }
}

}  // namespace

BootstrapResult bootstrap_dbicc(const DistanceMatrix& d, const BootstrapOptions& options) {
  check_options(options);
  const auto point = dbicc_point(d);
  const auto reps = bootstrap_replicates(d, options.replicates, options.seed, options.threads);
  return summarize(point, reps, options, options.corrected);
}

std::pair<BootstrapResult, BootstrapResult> bootstrap_both(const DistanceMatrix& d,
                                                           const BootstrapOptions& options) {
  check_options(options);
  const auto point = dbicc_point(d);
  const auto reps = bootstrap_replicates(d, options.replicates, options.seed, options.threads);
  return {summarize(point, reps, options, false), summarize(point, reps, options, true)};
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw InsufficientDataError("quantile of an empty list");
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile level must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

std::pair<double, double> percentile_ci(std::span<const double> estimates, double level) {
  if (estimates.empty()) throw InsufficientDataError("no bootstrap estimates");
  if (estimates.size() < 2) throw InsufficientDataError("percentile interval needs >= 2 estimates");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level must lie in (0, 1)");
  const double alpha = 1.0 - level;
  return {quantile(estimates, alpha / 2.0), quantile(estimates, 1.0 - alpha / 2.0)};
}

}  // namespace dbicc
