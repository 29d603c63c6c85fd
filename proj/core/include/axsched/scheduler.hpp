// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "axsched/assignment.hpp"
#include "axsched/channel.hpp"
#include "axsched/rng.hpp"

namespace axsched {

enum class PolicyKind { Dpp, Wmm, Srm, Pf, Rnd, Mm, Esrm };

std::string to_string(PolicyKind kind);
PolicyKind parse_policy_kind(const std::string& name);

/// Virtual-queue backlogs, one scalar per station:
///   q -- average-power constraint, mW units
///   z -- auxiliary-variable constraint, bits (ratio units under WMM/MM)
///   g -- minimum-average-rate constraint, bits
/// All start at zero and stay nonnegative.
struct QueueState {
  std::vector<double> q;
  std::vector<double> z;
  std::vector<double> g;

  static QueueState zeros(std::size_t stations) {
    return {std::vector<double>(stations, 0.0), std::vector<double>(stations, 0.0),
            std::vector<double>(stations, 0.0)};
  }
  std::size_t stations() const { return q.size(); }
};

/// Policy parameters. r_min / p_max are per-station vectors; the aux grid
/// is ascending, starts at 0 and ends at R_max.
struct PolicyConfig {
  PolicyKind kind = PolicyKind::Esrm;
  double v = 100.0;
  std::vector<double> r_min_bits;
  std::vector<double> p_max_mw;
  std::vector<double> aux_grid_bits;
  /// Separable per-station utility U_k(gamma), used by the Dpp kind only.
  std::function<double(std::size_t, double)> utility;

  static PolicyConfig uniform(PolicyKind kind, std::size_t stations, double v,
                              double r_min_bits, double p_max_mw,
                              std::vector<double> aux_grid);

  double r_max_bits() const { return aux_grid_bits.back(); }
  std::size_t stations() const { return r_min_bits.size(); }
  void validate() const;
};

struct AssignedPair {
  std::size_t station = 0;
  std::size_t ru = 0;
  double power_mw = 0.0;
  double rate_bits = 0.0;
};

/// One epoch's resource allocation: a partial station->RU matching with
/// per-pair transmit powers, plus the realized per-station totals
/// (zero for unassigned stations).
struct ResourceAction {
  std::vector<AssignedPair> pairs;
  std::vector<double> station_rate_bits;
  std::vector<double> station_power_mw;

  std::size_t stations() const { return station_rate_bits.size(); }
};

/// Applies the virtual-queue updates for one epoch:
///   Q' = [Q - p_max + p]^+   Z' = [Z - r + gamma]^+   G' = [G - r + r_min]^+
/// Under WMM/MM the Z service is r/r_min instead of r. Queues a policy
/// does not use are left untouched at zero.
QueueState update_queues(const QueueState& state, const ResourceAction& action,
                         std::span<const double> gamma, const PolicyConfig& cfg);

/// Per-station argmax over the grid of V U_k(gamma) - Z_k gamma;
/// ties resolve toward the larger gamma.
std::vector<double> choose_aux_separable(std::span<const double> z, const PolicyConfig& cfg);

/// Max-min threshold rule: every gamma is R_max when V > sum(Z),
/// otherwise every gamma is 0.
std::vector<double> choose_aux_minmax(std::span<const double> z, double v, double r_max);

struct PowerChoice {
  std::size_t level = 0;  // index into the power set
  double weight = 0.0;
};

/// Best transmit power for one (station, RU) pair: maximizes
/// rate_weight * r(p) - power_price * p over the discrete power set.
/// Ties resolve toward the lower power.
PowerChoice optimize_power(std::span<const double> rates_bits,
                           std::span<const double> powers_mw, double rate_weight,
                           double power_price);

struct EpochDecision {
  ResourceAction action;
  std::vector<double> gamma;
  QueueState next;
};

/// One epoch of the drift-plus-penalty family (Dpp, Esrm, Wmm, Mm):
/// pick auxiliary variables, build the per-pair weight matrix from
/// optimize_power, solve the assignment with skipping allowed, realize
/// the action and update the queues.
EpochDecision dpp_epoch(const QueueState& queues, const ChannelState& chan,
                        const Topology& topo, const PhyConfig& phy, const McsTable& mcs,
                        const PolicyConfig& cfg);

/// Instantaneous sum-rate maximization; everyone transmits at P_max.
ResourceAction srm_epoch(const ChannelState& chan, const Topology& topo,
                         const PhyConfig& phy, const McsTable& mcs);

/// Proportional fairness: assignment on r_{k,n} / max(ema_k, 1) at P_max.
/// `ema` is the running exponential moving average of realized rates and
/// is updated in place.
ResourceAction pf_epoch(const ChannelState& chan, const Topology& topo,
                        const PhyConfig& phy, const McsTable& mcs,
                        std::vector<double>& ema);

inline constexpr double kPfEmaBeta = 0.01;
inline constexpr double kPfInitialEma = 1.0;

/// Uniformly random min(K,N)-subset of stations matched to a uniformly
/// random RU subset through a random bijection, all at P_max.
ResourceAction rnd_epoch(const ChannelState& chan, const Topology& topo,
                         const PhyConfig& phy, const McsTable& mcs, Rng& rng);

}  // namespace axsched
