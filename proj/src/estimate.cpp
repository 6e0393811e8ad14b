#include "dbicc/estimate.hpp"

#include <string>

#include "dbicc/errors.hpp"

namespace dbicc {

namespace {

struct PairSums {
  long double within = 0.0L;
  long double between = 0.0L;
  std::size_t n_within = 0;
  std::size_t n_between = 0;
};

// Row-major sweep of the upper triangle; the fixed order makes results
// bit-reproducible.
PairSums sum_pairs(const DistanceMatrix& d) {
  PairSums s;
  const auto& groups = d.groups();
  const std::size_t n = d.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = d(a, b);
      const long double sq = static_cast<long double>(v * v);
      if (groups[a].individual == groups[b].individual) {
        s.within += sq;
        ++s.n_within;
      } else {
        s.between += sq;
        ++s.n_between;
      }
    }
  }
  return s;
}

}  // namespace

double msd_between(const DistanceMatrix& d) {
  const auto s = sum_pairs(d);
  if (s.n_between == 0) throw InsufficientGroupsError("no between-individual pairs");
  return static_cast<double>(s.between / static_cast<long double>(s.n_between));
}

double msd_within(const DistanceMatrix& d) {
  const auto s = sum_pairs(d);
  if (s.n_within == 0) {
    throw InsufficientReplicatesError("no individual has two or more replicates");
  }
  return static_cast<double>(s.within / static_cast<long double>(s.n_within));
}

DbiccEstimate dbicc_point(const DistanceMatrix& d) {
  const auto s = sum_pairs(d);
  if (s.n_between == 0) throw InsufficientGroupsError("no between-individual pairs");
  if (s.n_within == 0) {
    throw InsufficientReplicatesError("no individual has two or more replicates");
  }
  DbiccEstimate e;
  e.msd_between = static_cast<double>(s.between / static_cast<long double>(s.n_between));
  e.msd_within = static_cast<double>(s.within / static_cast<long double>(s.n_within));
  e.n_between_pairs = s.n_between;
  e.n_within_pairs = s.n_within;
  if (!(e.msd_between > 0.0)) {
    throw DegenerateDistancesError("between-individual mean squared distance is zero");
  }
  e.rho_hat = 1.0 - e.msd_within / e.msd_between;
  return e;
}

double population_dbicc_gaussian(double trace_sigma_t, double trace_sigma_eps) {
  if (!(trace_sigma_t >= 0.0) || !(trace_sigma_eps >= 0.0)) {
    throw ParameterError("covariance traces must be nonnegative");
  }
  const double total = trace_sigma_t + trace_sigma_eps;
  if (!(total > 0.0)) throw ParameterError("both covariance traces are zero");
  return trace_sigma_t / total;
}

}  // namespace dbicc
