#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dbicc/core_model.hpp"
#include "dbicc/estimate.hpp"
#include "dbicc/random.hpp"

namespace dbicc {

struct BootstrapOptions {
  std::size_t replicates = 1200;
  bool corrected = true;
  double level = 0.95;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct BootstrapResult {
  DbiccEstimate point;
  std::vector<double> replicate_estimates;  ///< non-degenerate replicates, in replicate order
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.95;
  bool corrected = true;
  std::uint64_t seed = 0;
  std::size_t B = 0;
  std::size_t n_degenerate = 0;
  std::vector<std::string> warnings;
};

/// Both estimates for one resampling vector pi. The two agree exactly when
/// pi has no repeated individual.
struct ReplicateEstimate {
  double naive = 0.0;
  double corrected = 0.0;
  bool has_duplicates = false;
  bool naive_degenerate = false;
  bool corrected_degenerate = false;
};

/// I indices drawn uniformly with replacement from {0, ..., I-1}.
std::vector<std::size_t> resample_individuals(std::size_t num_individuals, Rng& rng);

/// Squared-distance sums per pair of individual blocks, precomputed once so a
/// bootstrap replicate is evaluated in O(I^2) without touching the payloads.
class BlockSums {
 public:
  explicit BlockSums(const DistanceMatrix& d);

  std::size_t num_individuals() const { return counts_.size(); }

  /// Replicate estimate for the resampled individuals `pi` (0-based).
  ///
  /// Within sums use every resampled block as is, duplicates included. The
  /// naive between sum runs over all i1 < i2; the corrected one skips pairs
  /// with pi[i1] == pi[i2], whose blocks are really within-individual.
  ReplicateEstimate evaluate(std::span<const std::size_t> pi) const;

 private:
  double cross(std::size_t a, std::size_t b) const { return cross_[a * counts_.size() + b]; }

  std::vector<std::size_t> counts_;
  std::vector<double> within_;  // sum over unordered pairs inside block i
  std::vector<double> cross_;   // full J_a x J_b block sums; diagonal = 2 * within
};

/// Per-replicate estimates; replicate r draws pi from make_stream(seed, {r}).
std::vector<ReplicateEstimate> bootstrap_replicates(const DistanceMatrix& d, std::size_t B,
                                                    std::uint64_t seed, unsigned threads = 1);

/// Nonparametric individual-level bootstrap with a percentile interval.
/// Degenerate replicates are dropped and counted in n_degenerate.
BootstrapResult bootstrap_dbicc(const DistanceMatrix& d, const BootstrapOptions& options);

/// Naive and corrected results computed from the same resampling draws.
std::pair<BootstrapResult, BootstrapResult> bootstrap_both(const DistanceMatrix& d,
                                                           const BootstrapOptions& options);

/// Empirical (1-level)/2 and 1-(1-level)/2 quantiles, linearly interpolated
/// between order statistics at position (n-1)q.
std::pair<double, double> percentile_ci(std::span<const double> estimates, double level);

/// Type-7 sample quantile; q in [0, 1].
double quantile(std::span<const double> values, double q);

double median(std::span<const double> values);

}  // namespace dbicc
