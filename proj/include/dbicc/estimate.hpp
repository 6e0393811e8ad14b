#pragma once

#include <cstddef>

#include "dbicc/core_model.hpp"

namespace dbicc {

struct DbiccEstimate {
  double rho_hat = 0.0;
  double msd_within = 0.0;
  double msd_between = 0.0;
  std::size_t n_within_pairs = 0;   ///< sum_i C(J_i, 2)
  std::size_t n_between_pairs = 0;  ///< sum_{i1<i2} J_i1 J_i2
};

/// Mean squared distance over unordered cross-individual pairs.
double msd_between(const DistanceMatrix& d);

/// Mean squared distance over unordered within-individual pairs. Individuals
/// with a single replicate contribute nothing.
double msd_within(const DistanceMatrix& d);

/// rho_hat = 1 - MSD_w / MSD_b. Negative values are legal.
/// Throws DegenerateDistancesError when MSD_b is zero.
DbiccEstimate dbicc_point(const DistanceMatrix& d);

/// tr(Sigma_T) / (tr(Sigma_T) + tr(Sigma_eps)): the population dbICC of the
/// additive Gaussian vector model under Euclidean distance.
double population_dbicc_gaussian(double trace_sigma_t, double trace_sigma_eps);

}  // namespace dbicc
