#pragma once

// Brute-force reference implementations used to check the library.

#include <cmath>
#include <cstddef>
#include <vector>

#include "dbicc/core_model.hpp"
#include "dbicc/random.hpp"

namespace oracle {

// Labels for I individuals with the given replicate counts, in order.
inline std::vector<dbicc::GroupLabel> labels_for(const std::vector<std::size_t>& counts) {
  std::vector<dbicc::GroupLabel> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t j = 0; j < counts[i]; ++j) out.push_back({i, j});
  return out;
}

// Mean squared distance over all unordered pairs (a < b) selected by `same`.
inline double msd(const dbicc::Matrix& d, const std::vector<dbicc::GroupLabel>& g, bool same) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      if ((g[a].individual == g[b].individual) == same) {
        const double v = d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        s += v * v;
        ++n;
      }
  return s / static_cast<double>(n);
}

// Bootstrap replicate by materialising the resampled data set. Observation
// k of copy c is a separate row; pairs are classified by copy index, and
// for the corrected version pairs whose copies share an origin are dropped
// from the between set.
struct Rep {
  double naive;
  double corrected;
};

inline Rep replicate(const dbicc::Matrix& d, const std::vector<dbicc::GroupLabel>& g,
                     const std::vector<std::size_t>& pi) {
  struct Row {
    std::size_t copy, origin, row;
  };
  std::vector<Row> rows;
  for (std::size_t c = 0; c < pi.size(); ++c)
    for (std::size_t a = 0; a < g.size(); ++a)
      if (g[a].individual == pi[c]) rows.push_back({c, pi[c], a});
  double w = 0, nb = 0, cb = 0;
  std::size_t nw = 0, nnb = 0, ncb = 0;
  for (std::size_t x = 0; x < rows.size(); ++x)
    for (std::size_t y = x + 1; y < rows.size(); ++y) {
      const double v = d(static_cast<Eigen::Index>(rows[x].row), static_cast<Eigen::Index>(rows[y].row));
      if (rows[x].copy == rows[y].copy) {
        w += v * v;
        ++nw;
      } else {
        nb += v * v;
        ++nnb;
        if (rows[x].origin != rows[y].origin) {
          cb += v * v;
          ++ncb;
        }
      }
    }
  const double msw = w / static_cast<double>(nw);
  return {1.0 - msw / (nb / static_cast<double>(nnb)), 1.0 - msw / (cb / static_cast<double>(ncb))};
}

// Random Euclidean distance matrix between standard normal points in R^dim.
inline dbicc::Matrix random_distances(std::size_t n, std::size_t dim, dbicc::Rng& rng) {
  std::normal_distribution<double> z;
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& v : p) v = z(rng);
  dbicc::Matrix d = dbicc::Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += (pts[a][k] - pts[b][k]) * (pts[a][k] - pts[b][k]);
      d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = std::sqrt(s);
    }
  return d;
}

}  // namespace oracle
