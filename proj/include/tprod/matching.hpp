#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace tprod {

namespace detail {

// Hungarian algorithm (shortest augmenting path, O(n^3)) for a square cost
// matrix; returns the column assigned to each row of a minimum-total-cost
// perfect matching.
inline std::vector<int> hungarian_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("hungarian: square cost required");
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials/links, standard formulation
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> link(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    link[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = link[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[link[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (link[j0] != 0);
    do {
      const int j1 = way[j0];
      link[j0] = link[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j)
    if (link[j] > 0) row_to_col[link[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace detail

// Max matched distance under greedy nearest-neighbor pairing with removal.
inline double greedy_match_distance(std::span<const std::complex<double>> a,
                                    std::span<const std::complex<double>> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("greedy_match_distance: size mismatch");
  std::vector<char> used(b.size(), false);
  double worst = 0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

// Compares two complex multisets of equal size: greedy matching first, full
// Hungarian assignment when the greedy result exceeds `greedy_accept`.
// Returns the max matched distance of the better pairing.
inline double match_distance(std::span<const std::complex<double>> a,
                             std::span<const std::complex<double>> b,
                             double greedy_accept = 0.0) {
  const double g = greedy_match_distance(a, b);
  if (g <= greedy_accept || a.empty()) return g;
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost(i, j) = std::abs(a[i] - b[j]);
  const std::vector<int> assign = detail::hungarian_assignment(cost);
  double worst = 0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, cost(i, assign[i]));
  return std::min(g, worst);
}

inline double match_distance(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b,
                             double greedy_accept = 0.0) {
  return match_distance(std::span<const std::complex<double>>(a),
                        std::span<const std::complex<double>>(b), greedy_accept);
}

}  // namespace tprod
