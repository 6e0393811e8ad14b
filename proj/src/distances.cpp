#include "dbicc/distances.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dbicc/errors.hpp"

namespace dbicc {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputShapeError("distance arguments differ in length: " +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

std::span<const double> flat(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

std::vector<double> strict_lower(const Matrix& r) {
  const auto p = r.rows();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p * (p - 1) / 2));
  for (Eigen::Index k = 1; k < p; ++k)
    for (Eigen::Index l = 0; l < k; ++l) out.push_back(r(k, l));
  return out;
}

}  // namespace

void DistanceSpec::validate() const {
  if (threshold && !(*threshold >= 0.0 && *threshold <= 1.0)) {
    throw ParameterError("soft threshold must lie in [0, 1], got " +
                         std::to_string(*threshold));
  }
}

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::l2_vec: return "l2";
    case DistanceKind::l1_vec: return "l1";
    case DistanceKind::corr_of_corr: return "corr";
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name) {
  if (name == "l2" || name == "l2_vec") return DistanceKind::l2_vec;
  if (name == "l1" || name == "l1_vec") return DistanceKind::l1_vec;
  if (name == "corr" || name == "corr_of_corr") return DistanceKind::corr_of_corr;
  throw ParameterError("unknown distance '" + std::string(name) + "' (expected l2, l1 or corr)");
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
  return sum;
}

double corr_of_corr_distance(const Matrix& r1, const Matrix& r2) {
  if (r1.rows() != r1.cols() || r2.rows() != r2.cols() || r1.rows() != r2.rows()) {
    throw InputShapeError("correlation-of-correlations needs two square matrices of equal size");
  }
  if (r1.rows() < 3) {
    throw DegenerateInputError("correlation-of-correlations needs p >= 3, got p = " +
                               std::to_string(r1.rows()));
  }
  const auto x = strict_lower(r1);
  const auto y = strict_lower(r2);
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw DegenerateInputError("lower-triangular entries have zero variance");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::sqrt(std::max(0.0, 1.0 - r));
}

Matrix correlation_from_timeseries(const Matrix& x) {
  if (x.rows() < 3) {
    throw InsufficientDataError("correlation needs at least 3 time points, got " +
                                std::to_string(x.rows()));
  }
  if (x.cols() < 1) throw InputShapeError("time series has no columns");
  Matrix centered = x.rowwise() - x.colwise().mean();
  Vector scale = centered.colwise().norm().transpose();
  for (Eigen::Index k = 0; k < scale.size(); ++k) {
    if (!(scale(k) > 0.0)) {
      throw DegenerateInputError("time series column " + std::to_string(k) + " is constant");
    }
  }
  const Matrix cross = centered.transpose() * centered;
  const auto p = x.cols();
  Matrix r(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    r(k, k) = 1.0;
    for (Eigen::Index l = 0; l < k; ++l) {
      const double v = std::clamp(cross(k, l) / (scale(k) * scale(l)), -1.0, 1.0);
      r(k, l) = v;
      r(l, k) = v;
    }
  }
  return r;
}

ThresholdResult soft_threshold(const Matrix& r, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ParameterError("soft threshold must lie in [0, 1], got " + std::to_string(lambda));
  }
  if (r.rows() != r.cols()) throw InputShapeError("soft threshold needs a square matrix");
  ThresholdResult out{r, 0.0};
  const auto p = r.rows();
  if (p < 2) return out;
  std::size_t zeroed = 0;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      if (k == l) continue;
      const double v = r(k, l);
      const double shrunk = std::max(std::abs(v) - lambda, 0.0);
      out.matrix(k, l) = shrunk == 0.0 ? 0.0 : std::copysign(shrunk, v);
      if (shrunk == 0.0) ++zeroed;
    }
  }
  out.fraction_zeroed = static_cast<double>(zeroed) / static_cast<double>(p * (p - 1));
  return out;
}

double connectivity_score(const Matrix& r) {
  if (r.rows() != r.cols() || r.rows() == 0) {
    throw InputShapeError("connectivity score needs a non-empty square matrix");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(r);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError("correlation matrix is not positive definite");
  }
  const Eigen::MatrixXd& l = llt.matrixLLT();
  double log_det = 0.0;
  for (Eigen::Index k = 0; k < l.rows(); ++k) {
    if (!(l(k, k) > 0.0)) throw SingularMatrixError("correlation matrix is singular");
    log_det += 2.0 * std::log(l(k, k));
  }
  return -log_det;
}

double evaluate_distance(DistanceKind kind, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputShapeError("payload shapes differ");
  }
  switch (kind) {
    case DistanceKind::l2_vec: return l2_distance(flat(a), flat(b));
    case DistanceKind::l1_vec: return l1_distance(flat(a), flat(b));
    case DistanceKind::corr_of_corr: return corr_of_corr_distance(a, b);
  }
  throw ParameterError("unknown distance kind");
}

}  // namespace dbicc
