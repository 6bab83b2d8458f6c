#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfl/linalg.hpp"

namespace qfl {

std::vector<std::vector<double>> overlap_weights(const SpectralDecomposition& a,
                                                 const SpectralDecomposition& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "overlap_weights");
  const std::size_t n = a.dim();
  std::vector<std::vector<double>> w(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = std::norm(inner(a.vectors[i], b.vectors[j]));
  }
  return w;
}

// Kuhn-Munkres with potentials on cost = -weight; O(n^3).
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  const std::size_t n = weight.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t r0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = -weight[r0 - 1][col - 1] - u[r0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<std::size_t> perm(n);
  for (std::size_t col = 1; col <= n; ++col) perm[match[col] - 1] = col - 1;
  return perm;
}

SpectralDecomposition track_eigenpairs(const SpectralDecomposition& prev,
                                       const SpectralDecomposition& next,
                                       const TrackingOptions& options) {
  const std::size_t n = prev.dim();
  if (next.dim() != n) {
    throw Error(ErrorCode::DimMismatch,
                "track_eigenpairs: " + std::to_string(n) + " vs " + std::to_string(next.dim()));
  }

  // weight[label][slot]
  std::vector<std::vector<double>> weight(n, std::vector<double>(n));
  for (std::size_t label = 0; label < n; ++label) {
    const CVector& pv = prev.vector_of(label);
    for (std::size_t slot = 0; slot < n; ++slot) weight[label][slot] = std::norm(inner(pv, next.vectors[slot]));
  }
  const auto perm = max_weight_assignment(weight);

  double scale = 0.0;
  for (double x : next.values) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  const double cluster_width = options.degeneracy_tolerance * scale;

  for (std::size_t label = 0; label < n; ++label) {
    const std::size_t slot = perm[label];
    double captured = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (std::abs(next.values[s] - next.values[slot]) <= cluster_width) captured += weight[label][s];
    }
    if (captured < options.min_overlap) {
      throw Error(ErrorCode::TrackingFailure,
                  "branch " + std::to_string(label) + " retains overlap " + std::to_string(captured) +
                      " < " + std::to_string(options.min_overlap));
    }
  }

  SpectralDecomposition out = next;
  for (std::size_t label = 0; label < n; ++label) out.labels[perm[label]] = label;
  return out;
}

}  // namespace qfl
