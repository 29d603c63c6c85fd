// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "axsched/assignment.hpp"
#include "axsched/rng.hpp"

using namespace axsched;

namespace {

Matrix<double> random_int_matrix(std::size_t rows, std::size_t cols, Rng& rng, int lo, int hi) {
  Matrix<double> m(rows, cols);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = static_cast<double>(lo + static_cast<int>(rng.below(span)));
    }
  }
  return m;
}

bool feasible(const Assignment& a) {
  std::set<std::size_t> rows, cols;
  for (const auto& [k, n] : a.pairs) {
    if (!rows.insert(k).second) return false;
    if (!cols.insert(n).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("tiny instances") {
  SUBCASE("1x1 positive") {
    const auto m = Matrix<double>::from_rows({{5.0}});
    for (bool skip : {false, true}) {
      const Assignment a = solve_max_assignment(m, skip);
      REQUIRE(a.pairs.size() == 1);
      CHECK(a.pairs[0] == std::pair<std::size_t, std::size_t>{0, 0});
      CHECK(a.value == 5.0);
    }
  }

  SUBCASE("1x1 negative: skipping beats assigning") {
    const auto m = Matrix<double>::from_rows({{-1.0}});
    const Assignment skipped = solve_max_assignment(m, true);
    CHECK(skipped.pairs.empty());
    CHECK(skipped.value == 0.0);
    const Assignment forced = solve_max_assignment(m, false);
    REQUIRE(forced.pairs.size() == 1);
    CHECK(forced.value == -1.0);
  }

  SUBCASE("empty matrices") {
    CHECK(solve_max_assignment(Matrix<double>(), true).pairs.empty());
    CHECK(solve_max_assignment(Matrix<double>(0, 5), false).pairs.empty());
    CHECK(brute_force_assignment(Matrix<double>(), true).pairs.empty());
  }

  SUBCASE("1xN takes the best positive entry or nothing") {
    const auto m = Matrix<double>::from_rows({{-3.0, 2.0, 7.0, 1.0}});
    const Assignment a = solve_max_assignment(m, true);
    REQUIRE(a.pairs.size() == 1);
    CHECK(a.pairs[0].second == 2);
    CHECK(a.value == 7.0);
    const auto all_neg = Matrix<double>::from_rows({{-3.0, -2.0}});
    CHECK(solve_max_assignment(all_neg, true).pairs.empty());
  }

  SUBCASE("non-finite weights are rejected") {
    auto m = Matrix<double>(2, 2, 1.0);
    m(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(solve_max_assignment(m, true), std::invalid_argument);
  }
}

TEST_CASE("all-equal matrix: full value, lexicographic pairs") {
  for (std::size_t n : {1u, 3u, 5u}) {
    const Matrix<double> m(n, n, 2.5);
    const Assignment a = solve_max_assignment(m, true);
    REQUIRE(a.pairs.size() == n);
    CHECK(a.value == doctest::Approx(2.5 * static_cast<double>(n)));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(a.pairs[k] == std::pair<std::size_t, std::size_t>{k, k});
    }
  }
  // rectangular: rows take the low columns in order
  const Matrix<double> wide(2, 5, 1.0);
  const Assignment a = solve_max_assignment(wide, false);
  REQUIRE(a.pairs.size() == 2);
  CHECK(a.pairs[0] == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(a.pairs[1] == std::pair<std::size_t, std::size_t>{1, 1});
}

TEST_CASE("solver equals the exhaustive oracle") {
  Rng rng(2024);
  SUBCASE("integer weights, square and rectangular") {
    for (int iter = 0; iter < 300; ++iter) {
      const std::size_t rows = 1 + rng.below(7);
      const std::size_t cols = 1 + rng.below(7);
      const Matrix<double> w = random_int_matrix(rows, cols, rng, -50, 50);
      for (bool skip : {false, true}) {
        const Assignment fast = solve_max_assignment(w, skip);
        const Assignment slow = brute_force_assignment(w, skip);
        CHECK(fast.value == slow.value);  // integer sums are exact
        CHECK(feasible(fast));
        if (skip) {
          for (const auto& [k, n] : fast.pairs) CHECK(w(k, n) > 0.0);
        } else {
          CHECK(fast.pairs.size() == std::min(rows, cols));
        }
      }
    }
  }

  SUBCASE("real weights within 1e-9 relative") {
    for (int iter = 0; iter < 100; ++iter) {
      const std::size_t rows = 1 + rng.below(6);
      const std::size_t cols = 1 + rng.below(6);
      Matrix<double> w(rows, cols);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) w(i, j) = 40.0 * (rng.uniform01() - 0.35);
      }
      for (bool skip : {false, true}) {
        const Assignment fast = solve_max_assignment(w, skip);
        const Assignment slow = brute_force_assignment(w, skip);
        const double scale = std::max({std::abs(fast.value), std::abs(slow.value), 1.0});
        CHECK(std::abs(fast.value - slow.value) <= 1e-9 * scale);
      }
    }
  }

  SUBCASE("5x7 instances as a spot check") {
    for (int iter = 0; iter < 50; ++iter) {
      const Matrix<double> w = random_int_matrix(5, 7, rng, -50, 50);
      CHECK(solve_max_assignment(w, true).value == brute_force_assignment(w, true).value);
    }
  }
}

TEST_CASE("skip soundness and scale equivariance") {
  Rng rng(77);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t rows = 1 + rng.below(6);
    const std::size_t cols = 1 + rng.below(6);
    const Matrix<double> w = random_int_matrix(rows, cols, rng, -20, 20);
    const Assignment a = solve_max_assignment(w, true);
    CHECK(a.value >= 0.0);
    // removing any selected pair only loses its (positive) weight
    for (const auto& [k, n] : a.pairs) {
      CHECK(a.value - w(k, n) < a.value);
    }
    // positive scaling preserves optimality of the returned pair set
    const double c = 0.25 + 3.0 * rng.uniform01();
    Matrix<double> scaled(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) scaled(i, j) = c * w(i, j);
    }
    const Assignment b = solve_max_assignment(scaled, true);
    CHECK(b.value == doctest::Approx(c * a.value).epsilon(1e-9));
    double b_on_w = 0.0;
    for (const auto& [k, n] : b.pairs) b_on_w += w(k, n);
    CHECK(b_on_w == doctest::Approx(a.value).epsilon(1e-9));
  }
}

TEST_CASE("brute force guard") {
  const Matrix<double> big(9, 9, 1.0);
  CHECK_THROWS_AS(brute_force_assignment(big, true), std::invalid_argument);
  // 9x8 is fine: min dimension is 8
  const Matrix<double> tall(9, 8, 1.0);
  CHECK_NOTHROW(brute_force_assignment(tall, true));
}
