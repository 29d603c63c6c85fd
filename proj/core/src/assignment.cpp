// SPDX-License-Identifier: Apache-2.0
#include "axsched/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace axsched {

namespace {

// Hungarian method with potentials on an n x n cost matrix (minimization).
// Returns the column matched to each row. Deterministic: ties resolve to
// the lowest column index, so equal-cost instances match the diagonal.
std::vector<int> hungarian_min(const Matrix<double>& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, -1);  // match[j] = row assigned to column j; j == n is the slot
  std::vector<int> way(n + 1, 0);

  for (int i = 0; i < n; ++i) {
    match[n] = i;
    int j0 = n;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
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
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != -1);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != n);
  }

  std::vector<int> col_of_row(n, -1);
  for (int j = 0; j < n; ++j) {
    if (match[j] >= 0) col_of_row[match[j]] = j;
  }
  return col_of_row;
}

}  // namespace

Assignment solve_max_assignment(const Matrix<double>& weights, bool allow_skip) {
  const std::size_t k_count = weights.rows();
  const std::size_t n_count = weights.cols();
  Assignment out;
  if (k_count == 0 || n_count == 0) return out;

  for (double w : weights.data()) {
    if (!std::isfinite(w)) throw std::invalid_argument("assignment weights must be finite");
  }

  // Pad to square; maximize by negating. Skipping is realized by clamping
  // the weights at zero, then dropping the non-positive pairs.
  const std::size_t n = std::max(k_count, n_count);
  Matrix<double> cost(n, n, 0.0);
  for (std::size_t i = 0; i < k_count; ++i) {
    for (std::size_t j = 0; j < n_count; ++j) {
      const double w = allow_skip ? std::max(weights(i, j), 0.0) : weights(i, j);
      cost(i, j) = -w;
    }
  }

  const std::vector<int> col_of_row = hungarian_min(cost);
  for (std::size_t i = 0; i < k_count; ++i) {
    const int j = col_of_row[i];
    if (j < 0 || static_cast<std::size_t>(j) >= n_count) continue;  // padding column
    const double w = weights(i, static_cast<std::size_t>(j));
    if (allow_skip && w <= 0.0) continue;
    out.pairs.emplace_back(i, static_cast<std::size_t>(j));
    out.value += w;
  }
  return out;
}

namespace {

struct BruteState {
  const Matrix<double>* w = nullptr;
  bool allow_skip = false;
  std::size_t full = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_cols;  // per row, cols() == skipped
  std::vector<std::size_t> cols;
  std::vector<char> used;
};

void brute_rec(BruteState& s, std::size_t row, std::size_t count, double value) {
  if (row == s.w->rows()) {
    if (!s.allow_skip && count != s.full) return;
    if (value > s.best_value) {
      s.best_value = value;
      s.best_cols = s.cols;
    }
    return;
  }
  s.cols[row] = s.w->cols();  // leave the row unmatched
  brute_rec(s, row + 1, count, value);
  for (std::size_t j = 0; j < s.w->cols(); ++j) {
    if (s.used[j]) continue;
    const double wij = (*s.w)(row, j);
    if (s.allow_skip && wij <= 0.0) continue;
    s.used[j] = 1;
    s.cols[row] = j;
    brute_rec(s, row + 1, count + 1, value + wij);
    s.used[j] = 0;
  }
}

}  // namespace

Assignment brute_force_assignment(const Matrix<double>& weights, bool allow_skip) {
  const std::size_t k_count = weights.rows();
  const std::size_t n_count = weights.cols();
  Assignment out;
  if (k_count == 0 || n_count == 0) return out;
  if (std::min(k_count, n_count) > 8) {
    throw std::invalid_argument("brute_force_assignment refuses min(K,N) > 8");
  }

  BruteState s;
  s.w = &weights;
  s.allow_skip = allow_skip;
  s.full = std::min(k_count, n_count);
  s.cols.assign(k_count, n_count);
  s.used.assign(n_count, 0);
  brute_rec(s, 0, 0, 0.0);

  for (std::size_t i = 0; i < k_count; ++i) {
    if (s.best_cols[i] == n_count) continue;
    out.pairs.emplace_back(i, s.best_cols[i]);
    out.value += weights(i, s.best_cols[i]);
  }
  return out;
}

}  // namespace axsched
