#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dbicc/distances.hpp"
#include "dbicc/types.hpp"

namespace dbicc {

enum class PayloadKind { vector, matrix, timeseries };

std::string_view to_string(PayloadKind kind);

struct IndividualRecord {
  std::string id;
  std::vector<Matrix> replicates;
};

/// One tabular input row: (individual_id, replicate_id, payload).
struct ObservationRow {
  std::string individual_id;
  std::string replicate_id;
  Matrix payload;
};

/// Position of an observation: individual index and replicate index within it.
struct GroupLabel {
  std::size_t individual = 0;
  std::size_t replicate = 0;

  friend bool operator==(const GroupLabel&, const GroupLabel&) = default;
};

/// Repeated observations grouped by individual. Immutable once built.
///
/// Invariants (checked on construction): at least two individuals, every
/// individual has a replicate and at least one has two, all payloads share
/// one shape and are finite.
class GroupedSample {
 public:
  GroupedSample(std::vector<IndividualRecord> individuals, PayloadKind kind);

  const std::vector<IndividualRecord>& individuals() const { return individuals_; }
  PayloadKind kind() const { return kind_; }
  std::size_t num_individuals() const { return individuals_.size(); }
  std::size_t num_observations() const { return labels_.size(); }
  Eigen::Index payload_rows() const { return rows_; }
  Eigen::Index payload_cols() const { return cols_; }
  /// p for vectors and matrices, the column count for time series.
  Eigen::Index feature_dim() const { return kind_ == PayloadKind::vector ? rows_ : cols_; }

  std::vector<std::size_t> replicate_counts() const;
  /// Labels in (individual, replicate) order; index = row of the distance matrix.
  const std::vector<GroupLabel>& labels() const { return labels_; }
  const Matrix& payload(const GroupLabel& label) const {
    return individuals_[label.individual].replicates[label.replicate];
  }

 private:
  std::vector<IndividualRecord> individuals_;
  PayloadKind kind_;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::vector<GroupLabel> labels_;
};

/// Symmetric, nonnegative, zero-diagonal dissimilarities with a group label
/// per row. Rows of one individual need not be contiguous. The triangle
/// inequality is not required.
class DistanceMatrix {
 public:
  /// Validates the invariants. Entries are accepted as symmetric when
  /// |d(a,b) - d(b,a)| <= 1e-12 * max(1, |d(a,b)|); the upper triangle is
  /// then mirrored so the stored matrix is exactly symmetric.
  DistanceMatrix(Matrix values, std::vector<GroupLabel> groups);

  std::size_t size() const { return groups_.size(); }
  const Matrix& values() const { return values_; }
  double operator()(std::size_t a, std::size_t b) const {
    return values_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  const std::vector<GroupLabel>& groups() const { return groups_; }
  std::size_t num_individuals() const { return members_.size(); }
  /// Row indices belonging to individual i, ordered by replicate index.
  const std::vector<std::size_t>& members(std::size_t i) const { return members_[i]; }
  std::vector<std::size_t> replicate_counts() const;

 private:
  Matrix values_;
  std::vector<GroupLabel> groups_;
  std::vector<std::vector<std::size_t>> members_;
};

/// Groups rows by individual (first-appearance order) and orders replicates
/// by replicate_id (numerically when both ids are integers).
GroupedSample build_grouped_sample(std::span<const ObservationRow> rows, PayloadKind kind);

/// Pairwise distances over all observations in label order.
///
/// Time-series payloads are reduced to their Pearson correlation matrices
/// first; a threshold in `spec` is applied to matrix payloads (after that
/// reduction). corr_of_corr and thresholds need square matrix payloads.
/// Each unordered pair is evaluated once, so `threads` never changes results.
DistanceMatrix compute_distance_matrix(const GroupedSample& sample, const DistanceSpec& spec,
                                       unsigned threads = 1);

/// The payloads actually fed to the distance (after time-series reduction and
/// thresholding), plus the mean fraction of off-diagonals zeroed.
struct PreparedPayloads {
  std::vector<Matrix> payloads;
  double mean_fraction_zeroed = 0.0;
};
PreparedPayloads prepare_payloads(const GroupedSample& sample, const DistanceSpec& spec,
                                  unsigned threads = 1);

/// Distances between already prepared payloads, labelled by `labels`.
DistanceMatrix compute_distance_matrix(const PreparedPayloads& prepared,
                                       std::vector<GroupLabel> labels, DistanceKind kind,
                                       unsigned threads = 1);

}  // namespace dbicc
