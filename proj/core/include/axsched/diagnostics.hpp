// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "axsched/scheduler.hpp"

namespace axsched {

/// Constant of the one-epoch Lyapunov drift bound:
/// B = 1/2 sum_k ((p_k^max)^2 + (r_k^min)^2 + P_max^2 + 3 R_max^2),
/// powers in mW, rates in bits/epoch.
double compute_drift_bound_b(const PolicyConfig& cfg, const PhyConfig& phy);

struct DriftCheck {
  bool ok = false;
  double slack = 0.0;  // bound minus realized drift; nonnegative when ok
};

/// Per-sample form of the drift bound between two consecutive queue
/// states: L(next) - L(prev) <= B + sum_k Q(p - p_max) + Z(gamma - r)
/// + G(r_min - r). Holds deterministically for states produced by
/// update_queues.
DriftCheck check_drift_inequality(const QueueState& prev, const QueueState& next,
                                  const ResourceAction& action,
                                  std::span<const double> gamma, const PolicyConfig& cfg,
                                  const PhyConfig& phy);

struct TelescopingCheck {
  bool ok = false;
  double min_slack = 0.0;
};

/// Prefix inequality Q_k(t) - Q_k(0) >= sum_{tau<t} p_k(tau) - t p_k^max,
/// verified at every prefix of the run. q_history has one more row than
/// p_history (it includes the initial state).
TelescopingCheck check_telescoping(const std::vector<std::vector<double>>& q_history,
                                   const std::vector<std::vector<double>>& p_history,
                                   std::span<const double> p_max_mw);

}  // namespace axsched
