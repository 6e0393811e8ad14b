#include "dbicc/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "dbicc/errors.hpp"
#include "dbicc/parallel.hpp"

namespace dbicc {

namespace {

std::optional<long long> as_integer(std::string_view s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

bool replicate_less(const std::string& a, const std::string& b) {
  const auto ia = as_integer(a);
  const auto ib = as_integer(b);
  if (ia && ib) return *ia < *ib;
  return a < b;
}

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

std::string_view to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::vector: return "vector";
    case PayloadKind::matrix: return "matrix";
    case PayloadKind::timeseries: return "timeseries";
  }
  return "unknown";
}

GroupedSample::GroupedSample(std::vector<IndividualRecord> individuals, PayloadKind kind)
    : individuals_(std::move(individuals)), kind_(kind) {
  if (individuals_.size() < 2) {
    throw InsufficientGroupsError("need at least 2 individuals, got " +
                                  std::to_string(individuals_.size()));
  }
  bool any_repeated = false;
  bool first = true;
  for (std::size_t i = 0; i < individuals_.size(); ++i) {
    const auto& rec = individuals_[i];
    if (rec.replicates.empty()) {
      throw InputShapeError("individual '" + rec.id + "' has no replicates");
    }
    any_repeated = any_repeated || rec.replicates.size() >= 2;
    for (std::size_t j = 0; j < rec.replicates.size(); ++j) {
      const Matrix& payload = rec.replicates[j];
      if (first) {
        rows_ = payload.rows();
        cols_ = payload.cols();
        first = false;
        if (rows_ == 0 || cols_ == 0) throw InputShapeError("empty payload");
      } else if (payload.rows() != rows_ || payload.cols() != cols_) {
        throw InputShapeError("payload of individual '" + rec.id + "' has shape " +
                              shape_of(payload) + ", expected " + std::to_string(rows_) +
                              "x" + std::to_string(cols_));
      }
      if (!payload.allFinite()) {
        throw NonFiniteError("payload of individual '" + rec.id + "' contains NaN or Inf");
      }
      labels_.push_back({i, j});
    }
  }
  if (!any_repeated) {
    throw InsufficientReplicatesError("no individual has two or more replicates");
  }
  if (kind_ == PayloadKind::vector && cols_ != 1) {
    throw InputShapeError("vector payloads must be p x 1");
  }
  if (kind_ == PayloadKind::matrix && rows_ != cols_) {
    throw InputShapeError("matrix payloads must be square");
  }
}

std::vector<std::size_t> GroupedSample::replicate_counts() const {
  std::vector<std::size_t> out;
  out.reserve(individuals_.size());
  for (const auto& rec : individuals_) out.push_back(rec.replicates.size());
  return out;
}

DistanceMatrix::DistanceMatrix(Matrix values, std::vector<GroupLabel> groups)
    : values_(std::move(values)), groups_(std::move(groups)) {
  const auto n = static_cast<Eigen::Index>(groups_.size());
  if (values_.rows() != values_.cols()) throw InputShapeError("distance matrix is not square");
  if (values_.rows() != n) {
    throw InputShapeError("distance matrix has " + std::to_string(values_.rows()) +
                          " rows but " + std::to_string(n) + " group labels");
  }
  if (!values_.allFinite()) throw NonFiniteError("distance matrix contains NaN or Inf");
  for (Eigen::Index a = 0; a < n; ++a) {
    if (std::abs(values_(a, a)) > 1e-12) {
      throw InputShapeError("distance matrix diagonal entry " + std::to_string(a) +
                            " is not zero");
    }
    values_(a, a) = 0.0;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double up = values_(a, b);
      const double lo = values_(b, a);
      if (up < 0.0 || lo < 0.0) {
        throw InputShapeError("distance matrix has a negative entry at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
      }
      if (std::abs(up - lo) > 1e-12 * std::max(1.0, std::abs(up))) {
        throw InputShapeError("distance matrix is not symmetric at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
      }
      values_(b, a) = up;
    }
  }

  std::size_t num_individuals = 0;
  for (const auto& g : groups_) num_individuals = std::max(num_individuals, g.individual + 1);
  members_.assign(num_individuals, {});
  for (std::size_t a = 0; a < groups_.size(); ++a) members_[groups_[a].individual].push_back(a);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    auto& rows = members_[i];
    if (rows.empty()) {
      throw InputShapeError("individual index " + std::to_string(i) + " has no rows");
    }
    std::sort(rows.begin(), rows.end(), [this](std::size_t a, std::size_t b) {
      return groups_[a].replicate < groups_[b].replicate;
    });
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (groups_[rows[k]].replicate == groups_[rows[k - 1]].replicate) {
        throw InputShapeError("duplicate (individual, replicate) label for individual " +
                              std::to_string(i));
      }
    }
  }
  if (members_.size() < 2) {
    throw InsufficientGroupsError("distance matrix covers fewer than 2 individuals");
  }
}

std::vector<std::size_t> DistanceMatrix::replicate_counts() const {
  std::vector<std::size_t> out;
  out.reserve(members_.size());
  for (const auto& rows : members_) out.push_back(rows.size());
  return out;
}

GroupedSample build_grouped_sample(std::span<const ObservationRow> rows, PayloadKind kind) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<const ObservationRow*>> grouped;
  for (const auto& row : rows) {
    auto [it, inserted] = index.try_emplace(row.individual_id, order.size());
    if (inserted) {
      order.push_back(row.individual_id);
      grouped.emplace_back();
    }
    grouped[it->second].push_back(&row);
  }
  if (order.size() < 2) {
    throw InsufficientGroupsError("need at least 2 distinct individuals, got " +
                                  std::to_string(order.size()));
  }

  std::vector<IndividualRecord> individuals;
  individuals.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& members = grouped[i];
    std::stable_sort(members.begin(), members.end(), [](const auto* a, const auto* b) {
      return replicate_less(a->replicate_id, b->replicate_id);
    });
    IndividualRecord rec{order[i], {}};
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k > 0 && members[k]->replicate_id == members[k - 1]->replicate_id) {
        throw InputShapeError("duplicate replicate '" + members[k]->replicate_id +
                              "' for individual '" + order[i] + "'");
      }
      rec.replicates.push_back(members[k]->payload);
    }
    individuals.push_back(std::move(rec));
  }
  return GroupedSample(std::move(individuals), kind);
}

PreparedPayloads prepare_payloads(const GroupedSample& sample, const DistanceSpec& spec,
                                  unsigned threads) {
  spec.validate();
  const bool square_needed = spec.kind == DistanceKind::corr_of_corr || spec.threshold;
  if (square_needed && sample.kind() == PayloadKind::vector) {
    throw MetricMismatchError(std::string(spec.threshold ? "soft thresholding"
                                                         : "correlation-of-correlations") +
                              " needs matrix or time-series payloads, got vectors");
  }

  const auto& labels = sample.labels();
  PreparedPayloads out;
  out.payloads.resize(labels.size());
  std::vector<double> fractions(labels.size(), 0.0);
  parallel_for(labels.size(), threads, [&](std::size_t a) {
    Matrix payload = sample.payload(labels[a]);
    if (sample.kind() == PayloadKind::timeseries) payload = correlation_from_timeseries(payload);
    if (square_needed && payload.rows() != payload.cols()) {
      throw MetricMismatchError("payload is not a square matrix");
    }
    if (spec.threshold) {
      auto thresholded = soft_threshold(payload, *spec.threshold);
      payload = std::move(thresholded.matrix);
      fractions[a] = thresholded.fraction_zeroed;
    }
    out.payloads[a] = std::move(payload);
  });
  double total = 0.0;
  for (double f : fractions) total += f;
  out.mean_fraction_zeroed = total / static_cast<double>(labels.size());
  return out;
}

DistanceMatrix compute_distance_matrix(const PreparedPayloads& prepared,
                                       std::vector<GroupLabel> labels, DistanceKind kind,
                                       unsigned threads) {
  const auto& payloads = prepared.payloads;
  const auto n = payloads.size();
  Matrix values = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, threads, [&](std::size_t a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = evaluate_distance(kind, payloads[a], payloads[b]);
      values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = d;
      values(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = d;
    }
  });
  return DistanceMatrix(std::move(values), std::move(labels));
}

DistanceMatrix compute_distance_matrix(const GroupedSample& sample, const DistanceSpec& spec,
                                       unsigned threads) {
  return compute_distance_matrix(prepare_payloads(sample, spec, threads), sample.labels(),
                                 spec.kind, threads);
}

}  // namespace dbicc
