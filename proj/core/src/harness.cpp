// SPDX-License-Identifier: Apache-2.0
#include "axsched/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "axsched/units.hpp"

namespace axsched {

namespace {

namespace salt {
constexpr std::uint64_t topology = 0x746f706f6c6f6779ULL;
constexpr std::uint64_t run = 0x72756e2d73656564ULL;
constexpr std::uint64_t sweep = 0x2d2d737765657030ULL;
constexpr std::uint64_t channel = 0x6368616e2d726e67ULL;
constexpr std::uint64_t policy = 0x706f6c2d726e6700ULL;
}  // namespace salt

}  // namespace

std::uint64_t topology_seed(std::uint64_t master, std::uint64_t topology_index) {
  return derive_seed(master, {salt::topology, topology_index});
}

std::uint64_t run_seed(std::uint64_t master, std::uint64_t topology_index,
                       std::uint64_t policy_index) {
  return derive_seed(master, {salt::run, topology_index, policy_index});
}

std::uint64_t sweep_topology_seed(std::uint64_t master, std::size_t stations) {
  return derive_seed(master, {salt::sweep, salt::topology, stations});
}

std::uint64_t sweep_run_seed(std::uint64_t master, std::size_t stations,
                             std::uint64_t policy_index) {
  return derive_seed(master, {salt::sweep, salt::run, stations, policy_index});
}

PolicyConfig PolicySpec::resolve(std::size_t stations, const PhyConfig& phy,
                                 const McsTable& mcs) const {
  // Unconstrained max-min is weighted max-min with unit requirements.
  const double r_min = (kind == PolicyKind::Mm) ? 1.0 : r_min_bits;
  PolicyConfig cfg = PolicyConfig::uniform(kind, stations, v, r_min, dbm_to_mw(p_max_dbm),
                                           aux_rate_grid(phy, mcs));
  if (kind == PolicyKind::Dpp) {
    if (utility == "linear") {
      cfg.utility = [](std::size_t, double gamma) { return gamma; };
    } else if (utility == "log") {
      cfg.utility = [](std::size_t, double gamma) { return std::log1p(gamma); };
    } else {
      throw std::invalid_argument("unknown utility '" + utility + "'");
    }
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  phy.validate();
  mcs.validate();
  if (stations < 1) throw std::invalid_argument("need at least one station");
  if (epochs < 1) throw std::invalid_argument("need at least one epoch");
  if (topologies < 1) throw std::invalid_argument("need at least one topology");
  if (policies.empty()) throw std::invalid_argument("no policies configured");
  if (topology.d_max_m <= 1.0) throw std::invalid_argument("d_max must exceed 1 m");
  if (ma_window < 1) throw std::invalid_argument("moving-average window must be >= 1");
  if (stability_tolerance <= 0.0) throw std::invalid_argument("stability tolerance must be positive");
  for (const auto& p : policies) {
    (void)p.resolve(stations, phy, mcs);  // throws on bad policy parameters
  }
}

namespace {

double epoch_utility(const PolicyConfig& cfg, std::span<const double> rates) {
  switch (cfg.kind) {
    case PolicyKind::Wmm:
    case PolicyKind::Mm: {
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < rates.size(); ++k) {
        worst = std::min(worst, rates[k] / cfg.r_min_bits[k]);
      }
      return worst;
    }
    case PolicyKind::Dpp: {
      double total = 0.0;
      for (std::size_t k = 0; k < rates.size(); ++k) total += cfg.utility(k, rates[k]);
      return total;
    }
    default:
      return std::accumulate(rates.begin(), rates.end(), 0.0);
  }
}

}  // namespace

RunResult run_single(const ExperimentConfig& cfg, const Topology& topo,
                     const PolicySpec& policy, std::uint64_t seed) {
  const std::size_t stations = topo.stations();
  const std::size_t rus = cfg.phy.n_rus;
  const PolicyConfig pcfg = policy.resolve(stations, cfg.phy, cfg.mcs);

  Rng chan_rng(derive_seed(seed, {salt::channel}));
  Rng pol_rng(derive_seed(seed, {salt::policy}));

  QueueState queues = QueueState::zeros(stations);
  std::vector<double> ema(stations, kPfInitialEma);
  const std::vector<double> zero_gamma(stations, 0.0);

  RunResult result;
  if (cfg.store_epochs) result.epochs.reserve(cfg.epochs);

  std::vector<double> rate_sum(stations, 0.0), power_sum(stations, 0.0);
  std::vector<long double> power_prefix(stations, 0.0L);
  bool drift_ok = true, telescoping_ok = true;
  double min_drift_slack = std::numeric_limits<double>::infinity();
  double min_tel_slack = std::numeric_limits<double>::infinity();

  for (std::size_t t = 0; t < cfg.epochs; ++t) {
    const ChannelState chan = sample_channel(stations, rus, chan_rng);

    ResourceAction action;
    std::span<const double> gamma = zero_gamma;
    EpochDecision decision;
    switch (pcfg.kind) {
      case PolicyKind::Srm:
        action = srm_epoch(chan, topo, cfg.phy, cfg.mcs);
        break;
      case PolicyKind::Pf:
        action = pf_epoch(chan, topo, cfg.phy, cfg.mcs, ema);
        break;
      case PolicyKind::Rnd:
        action = rnd_epoch(chan, topo, cfg.phy, cfg.mcs, pol_rng);
        break;
      default:
        decision = dpp_epoch(queues, chan, topo, cfg.phy, cfg.mcs, pcfg);
        action = std::move(decision.action);
        gamma = decision.gamma;
        break;
    }

    QueueState next = update_queues(queues, action, gamma, pcfg);

    double drift_slack = std::numeric_limits<double>::quiet_NaN();
    if (cfg.checks) {
      const DriftCheck drift = check_drift_inequality(queues, next, action, gamma, pcfg, cfg.phy);
      drift_ok = drift_ok && drift.ok;
      min_drift_slack = std::min(min_drift_slack, drift.slack);
      drift_slack = drift.slack;
    }

    queues = std::move(next);

    for (std::size_t k = 0; k < stations; ++k) {
      rate_sum[k] += action.station_rate_bits[k];
      power_sum[k] += action.station_power_mw[k];
    }

    if (cfg.checks) {
      // Incremental prefix inequality Q(t) >= sum(p) - t * p_max.
      for (std::size_t k = 0; k < stations; ++k) {
        power_prefix[k] += action.station_power_mw[k];
        const long double bound = power_prefix[k] - (long double)(t + 1) * pcfg.p_max_mw[k];
        const long double slack = (long double)queues.q[k] - bound;
        if (slack < min_tel_slack) min_tel_slack = static_cast<double>(slack);
        if (slack < 0.0L) telescoping_ok = false;
      }
    }

    if (cfg.store_epochs) {
      EpochMetrics m;
      m.epoch = t;
      m.rate_bits = action.station_rate_bits;
      m.power_mw = action.station_power_mw;
      m.utility = epoch_utility(pcfg, action.station_rate_bits);
      m.queues = queues;
      m.drift_slack = drift_slack;
      result.epochs.push_back(std::move(m));
    }
  }

  RunSummary& s = result.summary;
  s.avg_rate_bits.resize(stations);
  s.avg_power_mw.resize(stations);
  const double horizon = static_cast<double>(cfg.epochs);
  for (std::size_t k = 0; k < stations; ++k) {
    s.avg_rate_bits[k] = rate_sum[k] / horizon;
    s.avg_power_mw[k] = power_sum[k] / horizon;
  }
  s.sum_rate_bits = std::accumulate(s.avg_rate_bits.begin(), s.avg_rate_bits.end(), 0.0);
  s.min_rate_bits = *std::min_element(s.avg_rate_bits.begin(), s.avg_rate_bits.end());
  s.max_relative_violation = 0.0;
  for (std::size_t k = 0; k < stations; ++k) {
    if (pcfg.r_min_bits[k] > 0.0) {
      const double viol = (pcfg.r_min_bits[k] - s.avg_rate_bits[k]) / pcfg.r_min_bits[k];
      s.max_relative_violation = std::max(s.max_relative_violation, viol);
    }
  }
  s.q_over_t.resize(stations);
  s.z_over_t.resize(stations);
  s.g_over_t.resize(stations);
  for (std::size_t k = 0; k < stations; ++k) {
    s.q_over_t[k] = queues.q[k] / horizon;
    s.z_over_t[k] = queues.z[k] / horizon;
    s.g_over_t[k] = queues.g[k] / horizon;
  }
  s.farthest_station = topo.farthest_station();
  s.checks_enabled = cfg.checks;
  s.drift_ok = drift_ok;
  s.telescoping_ok = telescoping_ok;
  s.min_drift_slack = cfg.checks ? min_drift_slack : 0.0;
  s.min_telescoping_slack = cfg.checks ? min_tel_slack : 0.0;
  return result;
}

namespace {

CdfSeries make_cdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  CdfSeries series;
  series.levels.resize(samples.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    series.levels[i] = static_cast<double>(i + 1) / n;
  }
  series.values = std::move(samples);
  return series;
}

}  // namespace

CdfStudy run_cdf_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.topologies < 2) throw std::invalid_argument("CDF study needs at least 2 topologies");

  std::vector<Topology> topos;
  topos.reserve(cfg.topologies);
  for (std::size_t i = 0; i < cfg.topologies; ++i) {
    topos.push_back(generate_topology(cfg.stations, cfg.topology.pl0_db, cfg.topology.exponent,
                                      cfg.topology.d_max_m, topology_seed(cfg.master_seed, i)));
  }

  CdfStudy study;
  for (std::size_t pi = 0; pi < cfg.policies.size(); ++pi) {
    const PolicySpec& policy = cfg.policies[pi];
    std::vector<double> min_rates(cfg.topologies), sum_rates(cfg.topologies);

    auto run_one = [&](std::size_t ti) {
      const RunResult res = run_single(cfg, topos[ti], policy, run_seed(cfg.master_seed, ti, pi));
      min_rates[ti] = res.summary.min_rate_bits;
      sum_rates[ti] = res.summary.sum_rate_bits;
    };

    if (cfg.parallel) {
      std::vector<std::future<void>> tasks;
      tasks.reserve(cfg.topologies);
      for (std::size_t ti = 0; ti < cfg.topologies; ++ti) {
        tasks.push_back(std::async(std::launch::async, run_one, ti));
      }
      for (auto& task : tasks) task.get();
    } else {
      for (std::size_t ti = 0; ti < cfg.topologies; ++ti) run_one(ti);
    }

    study.policy_names.push_back(policy.name());
    study.min_rate.push_back(make_cdf(std::move(min_rates)));
    study.sum_rate.push_back(make_cdf(std::move(sum_rates)));
  }
  return study;
}

std::vector<SweepPoint> run_k_sweep(const ExperimentConfig& cfg,
                                    std::span<const std::size_t> k_values) {
  cfg.validate();
  std::vector<SweepPoint> points;
  for (std::size_t k : k_values) {
    const Topology topo =
        generate_topology(k, cfg.topology.pl0_db, cfg.topology.exponent, cfg.topology.d_max_m,
                          sweep_topology_seed(cfg.master_seed, k));
    for (std::size_t pi = 0; pi < cfg.policies.size(); ++pi) {
      const RunResult res =
          run_single(cfg, topo, cfg.policies[pi], sweep_run_seed(cfg.master_seed, k, pi));
      points.push_back({cfg.policies[pi].name(), k, res.summary.min_rate_bits,
                        res.summary.sum_rate_bits});
    }
  }
  return points;
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<double> out(series.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    acc += series[i];
    if (i >= window) acc -= series[i - window];
    const std::size_t n = std::min(i + 1, window);
    out[i] = acc / static_cast<double>(n);
  }
  return out;
}

StabilityReport stability_report(const RunSummary& summary, const PolicyConfig& cfg,
                                 double tolerance) {
  StabilityReport report;
  const auto max_of = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  };
  report.q_ratio = max_of(summary.q_over_t);
  report.z_ratio = max_of(summary.z_over_t);
  report.g_ratio = max_of(summary.g_over_t);
  report.q_limit = tolerance * *std::min_element(cfg.p_max_mw.begin(), cfg.p_max_mw.end());
  report.z_limit = tolerance * cfg.r_max_bits();
  report.g_limit = tolerance * *std::min_element(cfg.r_min_bits.begin(), cfg.r_min_bits.end());
  report.pass = report.q_ratio <= report.q_limit && report.z_ratio <= report.z_limit &&
                report.g_ratio <= report.g_limit;
  return report;
}

}  // namespace axsched
