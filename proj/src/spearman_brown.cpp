#include "dbicc/spearman_brown.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbicc/errors.hpp"

namespace dbicc {

double snr(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ParameterError("SNR needs rho in [0, 1), got " + std::to_string(rho));
  }
  return rho / (1.0 - rho);
}

double snr_inverse(double s) {
  if (!(s >= 0.0) || std::isinf(s)) throw ParameterError("SNR must be finite and nonnegative");
  return s / (1.0 + s);
}

double classical_sb(double rho1, double m) {
  if (!(rho1 >= 0.0 && rho1 <= 1.0)) throw ParameterError("rho1 must lie in [0, 1]");
  if (!(m >= 1.0)) throw ParameterError("measurement count must be >= 1");
  return m * rho1 / (1.0 + (m - 1.0) * rho1);
}

LineFit fit_loglog(std::span<const std::pair<double, double>> points) {
  const std::size_t n = points.size();
  if (n < 2) throw InsufficientDataError("line fit needs at least 2 points");
  double xbar = 0.0, ybar = 0.0;
  for (const auto& [x, y] : points) {
    xbar += x;
    ybar += y;
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - xbar) * (x - xbar);
    sxy += (x - xbar) * (y - ybar);
  }
  if (!(sxx > 0.0)) throw DegenerateInputError("all abscissae are identical");

  LineFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  if (n == 2) {
    fit.degenerate = true;
    return fit;
  }
  double rss = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    rss += r * r;
  }
  const double sigma2 = rss / static_cast<double>(n - 2);
  fit.slope_se = std::sqrt(sigma2 / sxx);
  fit.intercept_se = std::sqrt(sigma2 * (1.0 / static_cast<double>(n) + xbar * xbar / sxx));
  return fit;
}

SbCurve build_sb_curve(std::span<const std::pair<double, double>> estimates, int offset) {
  if (offset != 0 && offset != 1) throw ParameterError("SB offset must be 0 or 1");
  SbCurve curve;
  curve.offset = offset;
  std::vector<std::pair<double, double>> sorted(estimates.begin(), estimates.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const auto [m, rho] = sorted[k];
    if (!(m > offset)) {
      throw ParameterError("intensity m = " + std::to_string(m) + " must exceed the offset");
    }
    if (k > 0 && m == sorted[k - 1].first) {
      throw ParameterError("duplicate intensity m = " + std::to_string(m));
    }
    if (!(rho > 0.0 && rho < 1.0)) {
      curve.excluded.emplace_back(m, rho);
      continue;
    }
    curve.points.push_back({m, rho, std::log(m - offset), std::log(rho / (1.0 - rho))});
  }
  if (curve.points.size() < 3) {
    throw InsufficientDataError("SB curve needs at least 3 estimates in (0, 1), got " +
                                std::to_string(curve.points.size()));
  }
  std::vector<std::pair<double, double>> xy;
  xy.reserve(curve.points.size());
  for (const auto& p : curve.points) xy.emplace_back(p.x, p.y);
  curve.fit = fit_loglog(xy);
  return curve;
}

}  // namespace dbicc
