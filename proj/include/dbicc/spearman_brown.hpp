#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dbicc {

/// rho / (1 - rho) for rho in [0, 1).
double snr(double rho);

/// s / (1 + s), the inverse of snr.
double snr_inverse(double s);

/// Classical Spearman-Brown: m rho1 / (1 + (m - 1) rho1).
double classical_sb(double rho1, double m);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  std::size_t n = 0;
  /// Set for a saturated two-point fit; standard errors are reported as 0.
  bool degenerate = false;
};

/// Ordinary least squares of y on x with residual-variance standard errors
/// (n - 2 degrees of freedom).
LineFit fit_loglog(std::span<const std::pair<double, double>> points);

struct SbPoint {
  double m = 0.0;
  double rho_hat = 0.0;
  double x = 0.0;  ///< log(m - offset)
  double y = 0.0;  ///< log(rho_hat / (1 - rho_hat))
};

struct SbCurve {
  std::vector<SbPoint> points;                      ///< sorted by m
  std::vector<std::pair<double, double>> excluded;  ///< (m, rho_hat) outside (0, 1)
  int offset = 1;
  LineFit fit;
};

/// Log-log SNR curve from (m, rho_hat) estimates. offset 1 regresses on
/// log(m - 1) (sample covariances), offset 0 on log(m) (slope estimates beta).
/// Estimates outside (0, 1) are excluded and listed; at least 3 must remain.
SbCurve build_sb_curve(std::span<const std::pair<double, double>> estimates, int offset);

}  // namespace dbicc
