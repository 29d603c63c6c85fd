// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "axsched/channel.hpp"
#include "axsched/diagnostics.hpp"
#include "axsched/scheduler.hpp"

namespace axsched {

struct TopologyParams {
  double pl0_db = 20.0;
  double exponent = 4.4;
  double d_max_m = 15.0;
};

/// Declarative policy entry as it appears in experiment configs; resolved
/// into a PolicyConfig once the station count is known. Powers are dBm
/// here and converted to mW exactly once, at resolution.
struct PolicySpec {
  PolicyKind kind = PolicyKind::Esrm;
  double v = 100.0;
  double r_min_bits = 26000.0;
  double p_max_dbm = 14.0;
  std::string utility = "log";  // "linear" or "log", Dpp kind only

  PolicyConfig resolve(std::size_t stations, const PhyConfig& phy, const McsTable& mcs) const;
  std::string name() const { return to_string(kind); }
};

struct ExperimentConfig {
  PhyConfig phy;
  McsTable mcs = default_mcs_table();
  TopologyParams topology;
  std::size_t stations = 8;
  std::vector<std::size_t> k_values{4, 8, 12, 16};
  std::size_t epochs = 2000;
  std::size_t topologies = 50;
  std::vector<PolicySpec> policies;
  std::uint64_t master_seed = 1;
  bool checks = false;
  bool store_epochs = false;
  bool parallel = false;
  std::size_t ma_window = 200;
  double stability_tolerance = 0.01;

  void validate() const;
};

/// Deterministic sub-seed scheme: one seed per generated topology and one
/// per (topology, policy) run, all derived from the master seed.
std::uint64_t topology_seed(std::uint64_t master, std::uint64_t topology_index);
std::uint64_t run_seed(std::uint64_t master, std::uint64_t topology_index,
                       std::uint64_t policy_index);
std::uint64_t sweep_topology_seed(std::uint64_t master, std::size_t stations);
std::uint64_t sweep_run_seed(std::uint64_t master, std::size_t stations,
                             std::uint64_t policy_index);

struct EpochMetrics {
  std::size_t epoch = 0;
  std::vector<double> rate_bits;   // per station
  std::vector<double> power_mw;    // per station
  double utility = 0.0;
  QueueState queues;               // post-update snapshot
  double drift_slack = 0.0;        // NaN when checks are disabled
};

struct RunSummary {
  std::vector<double> avg_rate_bits;
  std::vector<double> avg_power_mw;
  double sum_rate_bits = 0.0;
  double min_rate_bits = 0.0;
  /// max_k (r_min - avg_rate)/r_min, clamped at 0 when satisfied.
  double max_relative_violation = 0.0;
  std::vector<double> q_over_t;
  std::vector<double> z_over_t;
  std::vector<double> g_over_t;
  std::size_t farthest_station = 0;
  bool checks_enabled = false;
  bool drift_ok = true;
  bool telescoping_ok = true;
  double min_drift_slack = 0.0;
  double min_telescoping_slack = 0.0;
};

struct RunResult {
  RunSummary summary;
  std::vector<EpochMetrics> epochs;  // populated when cfg.store_epochs
};

/// Runs one policy on one topology for cfg.epochs epochs. Deterministic
/// in (cfg, topology, policy, seed).
RunResult run_single(const ExperimentConfig& cfg, const Topology& topo,
                     const PolicySpec& policy, std::uint64_t seed);

struct CdfSeries {
  std::vector<double> values;  // ascending
  std::vector<double> levels;  // (i+1)/n
};

struct CdfStudy {
  std::vector<std::string> policy_names;
  std::vector<CdfSeries> min_rate;  // indexed by policy
  std::vector<CdfSeries> sum_rate;
};

/// Multi-topology study: empirical CDFs of the per-run minimum average
/// rate and sum-rate, one series per policy over cfg.topologies
/// topologies shared across policies.
CdfStudy run_cdf_study(const ExperimentConfig& cfg);

struct SweepPoint {
  std::string policy;
  std::size_t stations = 0;
  double min_rate_bits = 0.0;
  double sum_rate_bits = 0.0;
};

/// One random topology per K; every policy runs cfg.epochs epochs on it.
std::vector<SweepPoint> run_k_sweep(const ExperimentConfig& cfg,
                                    std::span<const std::size_t> k_values);

/// Trailing-window arithmetic mean; the prefix uses available samples.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

struct StabilityReport {
  double q_ratio = 0.0;  // max_k Q_k(T)/T, and likewise below
  double z_ratio = 0.0;
  double g_ratio = 0.0;
  double q_limit = 0.0;  // tolerance * service constant (p_max, R_max, r_min)
  double z_limit = 0.0;
  double g_limit = 0.0;
  bool pass = false;
};

/// Mean-rate-stability proxy: final backlog over horizon per queue,
/// compared against `tolerance` times each queue's service constant.
StabilityReport stability_report(const RunSummary& summary, const PolicyConfig& cfg,
                                 double tolerance);

}  // namespace axsched
