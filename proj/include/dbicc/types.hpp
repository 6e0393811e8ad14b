#pragma once

#include <Eigen/Dense>

namespace dbicc {

/// Dense row-major payload storage. Vectors are p x 1, matrices p x p,
/// time series m x p (rows are time points).
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace dbicc
