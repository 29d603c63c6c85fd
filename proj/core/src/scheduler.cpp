// SPDX-License-Identifier: Apache-2.0
#include "axsched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace axsched {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Dpp: return "DPP";
    case PolicyKind::Wmm: return "WMM";
    case PolicyKind::Srm: return "SRM";
    case PolicyKind::Pf: return "PF";
    case PolicyKind::Rnd: return "RND";
    case PolicyKind::Mm: return "MM";
    case PolicyKind::Esrm: return "ESRM";
  }
  throw std::invalid_argument("unknown policy kind");
}

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "DPP") return PolicyKind::Dpp;
  if (name == "WMM") return PolicyKind::Wmm;
  if (name == "SRM") return PolicyKind::Srm;
  if (name == "PF") return PolicyKind::Pf;
  if (name == "RND") return PolicyKind::Rnd;
  if (name == "MM") return PolicyKind::Mm;
  if (name == "ESRM") return PolicyKind::Esrm;
  throw std::invalid_argument("unknown policy kind '" + name + "'");
}

namespace {

// Which virtual queues a policy drives, and whether the Z service is the
// rate-to-requirement ratio (weighted max-min) instead of the raw rate.
struct QueueUse {
  bool q = false;
  bool z = false;
  bool g = false;
  bool ratio_service = false;
};

QueueUse queue_use(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Dpp: return {true, true, true, false};
    case PolicyKind::Esrm: return {true, false, true, false};
    case PolicyKind::Wmm: return {true, true, false, true};
    case PolicyKind::Mm: return {false, true, false, true};
    default: return {};
  }
}

bool is_dpp_family(PolicyKind kind) {
  return kind == PolicyKind::Dpp || kind == PolicyKind::Esrm || kind == PolicyKind::Wmm ||
         kind == PolicyKind::Mm;
}

}  // namespace

PolicyConfig PolicyConfig::uniform(PolicyKind kind, std::size_t stations, double v,
                                   double r_min_bits, double p_max_mw,
                                   std::vector<double> aux_grid) {
  PolicyConfig cfg;
  cfg.kind = kind;
  cfg.v = v;
  cfg.r_min_bits.assign(stations, r_min_bits);
  cfg.p_max_mw.assign(stations, p_max_mw);
  cfg.aux_grid_bits = std::move(aux_grid);
  cfg.utility = [](std::size_t, double gamma) { return gamma; };
  cfg.validate();
  return cfg;
}

void PolicyConfig::validate() const {
  if (v <= 0.0) throw std::invalid_argument("control parameter V must be positive");
  if (r_min_bits.empty() || r_min_bits.size() != p_max_mw.size()) {
    throw std::invalid_argument("per-station constraint vectors are inconsistent");
  }
  for (double r : r_min_bits) {
    if (r < 0.0) throw std::invalid_argument("r_min must be nonnegative");
  }
  for (double p : p_max_mw) {
    if (p <= 0.0) throw std::invalid_argument("p_max must be positive");
  }
  if (aux_grid_bits.size() < 2 || aux_grid_bits.front() != 0.0) {
    throw std::invalid_argument("aux grid must start at 0 and contain R_max");
  }
  if (!std::is_sorted(aux_grid_bits.begin(), aux_grid_bits.end())) {
    throw std::invalid_argument("aux grid must be ascending");
  }
  if ((kind == PolicyKind::Wmm || kind == PolicyKind::Mm)) {
    for (double r : r_min_bits) {
      if (r <= 0.0) throw std::invalid_argument("max-min policies need positive r_min");
    }
  }
}

QueueState update_queues(const QueueState& state, const ResourceAction& action,
                         std::span<const double> gamma, const PolicyConfig& cfg) {
  const std::size_t stations = state.stations();
  if (action.stations() != stations || gamma.size() != stations ||
      cfg.stations() != stations) {
    throw std::invalid_argument("update_queues size mismatch");
  }
  const QueueUse use = queue_use(cfg.kind);
  QueueState next = state;
  for (std::size_t k = 0; k < stations; ++k) {
    const double r = action.station_rate_bits[k];
    const double p = action.station_power_mw[k];
    if (use.q) next.q[k] = std::max(0.0, state.q[k] - cfg.p_max_mw[k] + p);
    if (use.z) {
      const double served = use.ratio_service ? r / cfg.r_min_bits[k] : r;
      next.z[k] = std::max(0.0, state.z[k] - served + gamma[k]);
    }
    if (use.g) next.g[k] = std::max(0.0, state.g[k] - r + cfg.r_min_bits[k]);
  }
  return next;
}

std::vector<double> choose_aux_separable(std::span<const double> z, const PolicyConfig& cfg) {
  if (!cfg.utility) throw std::invalid_argument("separable aux step needs a utility");
  std::vector<double> gamma(z.size(), 0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    double best = -std::numeric_limits<double>::infinity();
    double best_gamma = 0.0;
    for (double g : cfg.aux_grid_bits) {
      const double val = cfg.v * cfg.utility(k, g) - z[k] * g;
      if (val >= best) {  // ties toward the larger gamma
        best = val;
        best_gamma = g;
      }
    }
    gamma[k] = best_gamma;
  }
  return gamma;
}

std::vector<double> choose_aux_minmax(std::span<const double> z, double v, double r_max) {
  if (v <= 0.0) throw std::invalid_argument("control parameter V must be positive");
  const double z_sum = std::accumulate(z.begin(), z.end(), 0.0);
  return std::vector<double>(z.size(), v > z_sum ? r_max : 0.0);
}

PowerChoice optimize_power(std::span<const double> rates_bits,
                           std::span<const double> powers_mw, double rate_weight,
                           double power_price) {
  if (rates_bits.empty() || rates_bits.size() != powers_mw.size()) {
    throw std::invalid_argument("optimize_power size mismatch");
  }
  PowerChoice best{0, rate_weight * rates_bits[0] - power_price * powers_mw[0]};
  for (std::size_t m = 1; m < rates_bits.size(); ++m) {
    const double w = rate_weight * rates_bits[m] - power_price * powers_mw[m];
    if (w > best.weight) {  // strict: ties keep the lower power
      best = {m, w};
    }
  }
  return best;
}

namespace {

ResourceAction realize_action(std::size_t stations, const Assignment& assignment,
                              const Matrix<std::size_t>& power_idx, const RateTable& rates) {
  ResourceAction action;
  action.station_rate_bits.assign(stations, 0.0);
  action.station_power_mw.assign(stations, 0.0);
  action.pairs.reserve(assignment.pairs.size());
  for (const auto& [k, n] : assignment.pairs) {
    const std::size_t m = power_idx(k, n);
    AssignedPair pair{k, n, rates.power_mw[m], rates.at(k, n, m)};
    action.station_rate_bits[k] = pair.rate_bits;
    action.station_power_mw[k] = pair.power_mw;
    action.pairs.push_back(pair);
  }
  return action;
}

ResourceAction fixed_power_action(std::size_t stations, const Assignment& assignment,
                                  const Matrix<double>& rates, double p_mw) {
  ResourceAction action;
  action.station_rate_bits.assign(stations, 0.0);
  action.station_power_mw.assign(stations, 0.0);
  action.pairs.reserve(assignment.pairs.size());
  for (const auto& [k, n] : assignment.pairs) {
    AssignedPair pair{k, n, p_mw, rates(k, n)};
    action.station_rate_bits[k] = pair.rate_bits;
    action.station_power_mw[k] = pair.power_mw;
    action.pairs.push_back(pair);
  }
  return action;
}

}  // namespace

EpochDecision dpp_epoch(const QueueState& queues, const ChannelState& chan,
                        const Topology& topo, const PhyConfig& phy, const McsTable& mcs,
                        const PolicyConfig& cfg) {
  if (!is_dpp_family(cfg.kind)) {
    throw std::invalid_argument("dpp_epoch handles DPP, ESRM, WMM and MM only");
  }
  const std::size_t stations = queues.stations();
  const std::size_t rus = phy.n_rus;
  if (chan.stations() != stations || topo.stations() != stations ||
      chan.rus() != rus || cfg.stations() != stations) {
    throw std::invalid_argument("dpp_epoch dimension mismatch");
  }

  const RateTable rates = build_rate_table(chan, topo, phy, mcs);

  std::vector<double> gamma;
  switch (cfg.kind) {
    case PolicyKind::Dpp:
      gamma = choose_aux_separable(queues.z, cfg);
      break;
    case PolicyKind::Wmm:
    case PolicyKind::Mm: {
      // The max-min Z queue is served in rate-to-requirement ratio units,
      // so the auxiliary bound is R_max/r_min (for MM, r_min = 1 and this
      // is R_max itself).
      gamma = choose_aux_minmax(queues.z, cfg.v, cfg.r_max_bits());
      for (std::size_t k = 0; k < stations; ++k) gamma[k] /= cfg.r_min_bits[k];
      break;
    }
    default:  // Esrm: linear utility, no auxiliary variables
      gamma.assign(stations, 0.0);
      break;
  }

  const std::size_t levels = rates.levels();
  Matrix<double> weights(stations, rus, 0.0);
  Matrix<std::size_t> power_idx(stations, rus, levels - 1);
  for (std::size_t k = 0; k < stations; ++k) {
    double rate_weight = 0.0;
    switch (cfg.kind) {
      case PolicyKind::Dpp: rate_weight = queues.z[k] + queues.g[k]; break;
      case PolicyKind::Esrm: rate_weight = cfg.v + queues.g[k]; break;
      default: rate_weight = queues.z[k] / cfg.r_min_bits[k]; break;  // Wmm, Mm
    }
    const double power_price = queues.q[k];
    for (std::size_t n = 0; n < rus; ++n) {
      if (cfg.kind == PolicyKind::Mm) {
        // Unconstrained max-min transmits at the maximum power level.
        weights(k, n) = rate_weight * rates.at(k, n, levels - 1);
        power_idx(k, n) = levels - 1;
      } else {
        const PowerChoice choice =
            optimize_power(rates.at(k, n), rates.power_mw, rate_weight, power_price);
        weights(k, n) = choice.weight;
        power_idx(k, n) = choice.level;
      }
    }
  }

  // The constrained kinds skip nonpositive pairs: a scheduled pair always
  // spends power, so a pair that cannot pay for itself must stay idle.
  // Unconstrained max-min has no power cost and keeps the full matching,
  // letting drained stations (weight 0) ride along on free RUs.
  const bool allow_skip = cfg.kind != PolicyKind::Mm;
  const Assignment assignment = solve_max_assignment(weights, allow_skip);

  EpochDecision decision;
  decision.action = realize_action(stations, assignment, power_idx, rates);
  decision.gamma = std::move(gamma);
  decision.next = update_queues(queues, decision.action, decision.gamma, cfg);
  return decision;
}

ResourceAction srm_epoch(const ChannelState& chan, const Topology& topo,
                         const PhyConfig& phy, const McsTable& mcs) {
  const Matrix<double> rates = rate_matrix(chan, topo, phy, mcs, phy.p_max_dbm());
  const Assignment assignment = solve_max_assignment(rates, /*allow_skip=*/true);
  return fixed_power_action(chan.stations(), assignment, rates, phy.p_max_mw());
}

ResourceAction pf_epoch(const ChannelState& chan, const Topology& topo,
                        const PhyConfig& phy, const McsTable& mcs,
                        std::vector<double>& ema) {
  const std::size_t stations = chan.stations();
  if (ema.size() != stations) throw std::invalid_argument("pf_epoch EMA size mismatch");

  const Matrix<double> rates = rate_matrix(chan, topo, phy, mcs, phy.p_max_dbm());
  Matrix<double> weights(stations, chan.rus());
  for (std::size_t k = 0; k < stations; ++k) {
    const double w = 1.0 / std::max(ema[k], 1.0);
    for (std::size_t n = 0; n < chan.rus(); ++n) weights(k, n) = w * rates(k, n);
  }
  const Assignment assignment = solve_max_assignment(weights, /*allow_skip=*/true);
  ResourceAction action = fixed_power_action(stations, assignment, rates, phy.p_max_mw());
  for (std::size_t k = 0; k < stations; ++k) {
    ema[k] = (1.0 - kPfEmaBeta) * ema[k] + kPfEmaBeta * action.station_rate_bits[k];
  }
  return action;
}

ResourceAction rnd_epoch(const ChannelState& chan, const Topology& topo,
                         const PhyConfig& phy, const McsTable& mcs, Rng& rng) {
  const std::size_t stations = chan.stations();
  const std::size_t rus = chan.rus();
  const std::size_t m = std::min(stations, rus);

  std::vector<std::size_t> station_order(stations), ru_order(rus);
  std::iota(station_order.begin(), station_order.end(), 0);
  std::iota(ru_order.begin(), ru_order.end(), 0);
  rng.shuffle(station_order);
  rng.shuffle(ru_order);

  const Matrix<double> rates = rate_matrix(chan, topo, phy, mcs, phy.p_max_dbm());
  Assignment assignment;
  for (std::size_t i = 0; i < m; ++i) {
    assignment.pairs.emplace_back(station_order[i], ru_order[i]);
  }
  std::sort(assignment.pairs.begin(), assignment.pairs.end());
  return fixed_power_action(stations, assignment, rates, phy.p_max_mw());
}

}  // namespace axsched
