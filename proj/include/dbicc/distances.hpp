#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "dbicc/types.hpp"

namespace dbicc {

enum class DistanceKind {
  l2_vec,        ///< Euclidean distance between vec(a) and vec(b); Frobenius for matrices.
  l1_vec,        ///< Sum of absolute entrywise differences.
  corr_of_corr,  ///< sqrt(1 - r), r = Pearson correlation of the strictly lower triangles.
};

/// A distance choice plus the optional soft threshold applied to matrix
/// payloads before distancing.
struct DistanceSpec {
  DistanceKind kind = DistanceKind::l2_vec;
  std::optional<double> threshold;

  /// Throws ParameterError when the threshold lies outside [0, 1].
  void validate() const;
};

std::string_view to_string(DistanceKind kind);
/// Accepts "l2", "l1", "corr" and the enum spellings. Throws ParameterError.
DistanceKind parse_distance_kind(std::string_view name);

double l2_distance(std::span<const double> a, std::span<const double> b);
double l1_distance(std::span<const double> a, std::span<const double> b);

/// sqrt(1 - r) where r correlates the strictly lower-triangular entries of
/// the two matrices. Requires p >= 3 and non-constant lower triangles.
double corr_of_corr_distance(const Matrix& r1, const Matrix& r2);

/// Pearson correlation matrix of the columns of an m x p series.
Matrix correlation_from_timeseries(const Matrix& x);

struct ThresholdResult {
  Matrix matrix;
  double fraction_zeroed = 0.0;  ///< zero off-diagonals / all off-diagonals
};

/// Off-diagonal r -> sign(r) * max(|r| - lambda, 0); the diagonal is kept.
ThresholdResult soft_threshold(const Matrix& r, double lambda);

/// -log det(R) through a Cholesky factorization.
double connectivity_score(const Matrix& r);

/// Evaluates `kind` between two payloads of identical shape.
double evaluate_distance(DistanceKind kind, const Matrix& a, const Matrix& b);

}  // namespace dbicc
