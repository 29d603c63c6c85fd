// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "axsched/matrix.hpp"

namespace axsched {

/// A partial matching of stations to RUs: station and RU indices are each
/// used at most once. `value` is the sum of the selected weights.
struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (station, ru), sorted by station
  double value = 0.0;
};

/// Exact maximum-weight rectangular assignment via the Hungarian method,
/// O(max(K,N)^3). With `allow_skip`, pairs whose weight is <= 0 are never
/// selected (the matrix is clamped at zero before solving and non-positive
/// pairs are dropped afterwards); without it, the matching has full
/// cardinality min(K,N) even when that forces negative weights in.
/// Ties between equally optimal assignments resolve toward low indices.
Assignment solve_max_assignment(const Matrix<double>& weights, bool allow_skip);

/// Exhaustive reference optimum over all partial matchings. Test oracle;
/// refuses instances with min(K,N) > 8.
Assignment brute_force_assignment(const Matrix<double>& weights, bool allow_skip);

}  // namespace axsched
