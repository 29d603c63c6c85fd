// SPDX-License-Identifier: Apache-2.0
#include "axsched/diagnostics.hpp"

#include <limits>
#include <stdexcept>

namespace axsched {

double compute_drift_bound_b(const PolicyConfig& cfg, const PhyConfig& phy) {
  const double p_max_mw = phy.p_max_mw();
  const double r_max = cfg.r_max_bits();
  double b = 0.0;
  for (std::size_t k = 0; k < cfg.stations(); ++k) {
    b += cfg.p_max_mw[k] * cfg.p_max_mw[k] + cfg.r_min_bits[k] * cfg.r_min_bits[k] +
         p_max_mw * p_max_mw + 3.0 * r_max * r_max;
  }
  return 0.5 * b;
}

DriftCheck check_drift_inequality(const QueueState& prev, const QueueState& next,
                                  const ResourceAction& action,
                                  std::span<const double> gamma, const PolicyConfig& cfg,
                                  const PhyConfig& phy) {
  const std::size_t stations = prev.stations();
  if (next.stations() != stations || action.stations() != stations ||
      gamma.size() != stations || cfg.stations() != stations) {
    throw std::invalid_argument("check_drift_inequality size mismatch");
  }

  const bool ratio_service = cfg.kind == PolicyKind::Wmm || cfg.kind == PolicyKind::Mm;

  long double lhs = 0.0L;
  long double rhs = compute_drift_bound_b(cfg, phy);
  for (std::size_t k = 0; k < stations; ++k) {
    const long double dq = (long double)next.q[k] * next.q[k] - (long double)prev.q[k] * prev.q[k];
    const long double dz = (long double)next.z[k] * next.z[k] - (long double)prev.z[k] * prev.z[k];
    const long double dg = (long double)next.g[k] * next.g[k] - (long double)prev.g[k] * prev.g[k];
    lhs += 0.5L * (dq + dz + dg);

    const double r = action.station_rate_bits[k];
    const double p = action.station_power_mw[k];
    const double z_service = ratio_service ? r / cfg.r_min_bits[k] : r;
    rhs += (long double)prev.q[k] * (p - cfg.p_max_mw[k]);
    rhs += (long double)prev.z[k] * (gamma[k] - z_service);
    rhs += (long double)prev.g[k] * (cfg.r_min_bits[k] - r);
  }

  DriftCheck check;
  check.slack = static_cast<double>(rhs - lhs);
  check.ok = lhs <= rhs;
  return check;
}

TelescopingCheck check_telescoping(const std::vector<std::vector<double>>& q_history,
                                   const std::vector<std::vector<double>>& p_history,
                                   std::span<const double> p_max_mw) {
  if (q_history.size() != p_history.size() + 1) {
    throw std::invalid_argument("q_history must have one more row than p_history");
  }
  const std::size_t stations = p_max_mw.size();

  TelescopingCheck check;
  check.ok = true;
  check.min_slack = std::numeric_limits<double>::infinity();
  std::vector<long double> arrivals(stations, 0.0L);
  for (std::size_t t = 1; t < q_history.size(); ++t) {
    for (std::size_t k = 0; k < stations; ++k) {
      arrivals[k] += p_history[t - 1][k];
      const long double bound = arrivals[k] - (long double)t * p_max_mw[k];
      const long double slack = (long double)q_history[t][k] - q_history[0][k] - bound;
      if (slack < check.min_slack) check.min_slack = static_cast<double>(slack);
      if (slack < 0.0L) check.ok = false;
    }
  }
  if (q_history.size() == 1) check.min_slack = 0.0;
  return check;
}

}  // namespace axsched
