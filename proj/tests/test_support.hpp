// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit and acceptance suites: feasibility checks on
// emitted actions and an exhaustive optimizer over the full action set,
// independent of the production solver path.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "axsched/channel.hpp"
#include "axsched/scheduler.hpp"

namespace axsched::test {

// RU-sharing and one-RU-per-station constraints plus power-set membership.
inline bool action_is_feasible(const ResourceAction& action, std::size_t stations,
                               std::size_t rus, const std::vector<double>& powers_mw) {
  std::set<std::size_t> used_k, used_n;
  for (const auto& pair : action.pairs) {
    if (pair.station >= stations || pair.ru >= rus) return false;
    if (!used_k.insert(pair.station).second) return false;
    if (!used_n.insert(pair.ru).second) return false;
    bool in_set = false;
    for (double p : powers_mw) {
      if (std::abs(p - pair.power_mw) <= 1e-12 * std::max(1.0, p)) in_set = true;
    }
    if (!in_set) return false;
  }
  for (std::size_t k = 0; k < stations; ++k) {
    if (used_k.count(k)) continue;
    if (action.station_rate_bits[k] != 0.0 || action.station_power_mw[k] != 0.0) return false;
  }
  return true;
}

// Full per-epoch objective of the constrained policy's assignment step:
// sum_k [Z r_k + G (r_k - r_min) + Q (p_max - p_k)].
inline double step3_objective(const std::vector<double>& station_rate,
                              const std::vector<double>& station_power,
                              const QueueState& queues, const PolicyConfig& cfg) {
  double total = 0.0;
  for (std::size_t k = 0; k < queues.stations(); ++k) {
    total += queues.z[k] * station_rate[k] +
             queues.g[k] * (station_rate[k] - cfg.r_min_bits[k]) +
             queues.q[k] * (cfg.p_max_mw[k] - station_power[k]);
  }
  return total;
}

namespace detail {

inline void enumerate_actions(const RateTable& rates, const QueueState& queues,
                              const PolicyConfig& cfg, std::size_t k, std::uint32_t used_rus,
                              std::vector<double>& rate, std::vector<double>& power,
                              double& best) {
  if (k == rates.stations) {
    best = std::max(best, step3_objective(rate, power, queues, cfg));
    return;
  }
  // leave station k unscheduled
  rate[k] = 0.0;
  power[k] = 0.0;
  enumerate_actions(rates, queues, cfg, k + 1, used_rus, rate, power, best);
  for (std::size_t n = 0; n < rates.rus; ++n) {
    if (used_rus & (1u << n)) continue;
    for (std::size_t m = 0; m < rates.levels(); ++m) {
      rate[k] = rates.at(k, n, m);
      power[k] = rates.power_mw[m];
      enumerate_actions(rates, queues, cfg, k + 1, used_rus | (1u << n), rate, power, best);
    }
  }
  rate[k] = 0.0;
  power[k] = 0.0;
}

}  // namespace detail

// Exhaustive maximum of the step-3 objective over every feasible
// (assignment, power) action. Only viable for toy sizes.
inline double exhaustive_step3_max(const RateTable& rates, const QueueState& queues,
                                   const PolicyConfig& cfg) {
  std::vector<double> rate(rates.stations, 0.0), power(rates.stations, 0.0);
  double best = -std::numeric_limits<double>::infinity();
  detail::enumerate_actions(rates, queues, cfg, 0, 0, rate, power, best);
  return best;
}

}  // namespace axsched::test
