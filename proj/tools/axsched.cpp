// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run / cdf / sweep / selftest experiments, CSV out.
// Exit codes: 0 success, 1 usage, 2 config, 3 runtime.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axsched/config.hpp"
#include "axsched/csv.hpp"
#include "axsched/units.hpp"

namespace fs = std::filesystem;
using namespace axsched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// Tracks written files so a failed invocation leaves no partial output.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    write_file_atomic(path, content);
    written_.push_back(path);
  }

  void discard_all() noexcept {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> topologies;
  std::optional<std::size_t> stations;
  std::optional<double> v;
  std::string policies;
  bool checks = false;
};

void apply_overrides(ExperimentConfig& cfg, const Overrides& ov) {
  if (ov.seed) cfg.master_seed = *ov.seed;
  if (ov.epochs) cfg.epochs = *ov.epochs;
  if (ov.topologies) cfg.topologies = *ov.topologies;
  if (ov.stations) cfg.stations = *ov.stations;
  if (ov.v) {
    for (auto& p : cfg.policies) p.v = *ov.v;
  }
  if (ov.checks) cfg.checks = true;
  if (!ov.policies.empty()) {
    std::vector<PolicySpec> kept;
    std::size_t start = 0;
    std::vector<PolicyKind> wanted;
    const std::string& list = ov.policies;
    while (start <= list.size()) {
      const std::size_t comma = list.find(',', start);
      const std::string token =
          list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!token.empty()) wanted.push_back(parse_policy_kind(token));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    for (const auto& p : cfg.policies) {
      for (PolicyKind k : wanted) {
        if (p.kind == k) {
          kept.push_back(p);
          break;
        }
      }
    }
    if (kept.empty()) throw ConfigError("--policies filter removed every policy");
    cfg.policies = std::move(kept);
  }
  cfg.validate();
}

int cmd_run(const ExperimentConfig& cfg, OutputDir& out) {
  ExperimentConfig run_cfg = cfg;
  run_cfg.store_epochs = true;

  const Topology topo =
      generate_topology(run_cfg.stations, run_cfg.topology.pl0_db, run_cfg.topology.exponent,
                        run_cfg.topology.d_max_m, topology_seed(run_cfg.master_seed, 0));

  std::vector<std::string> names;
  std::vector<RunSummary> summaries;
  for (std::size_t pi = 0; pi < run_cfg.policies.size(); ++pi) {
    const PolicySpec& policy = run_cfg.policies[pi];
    const RunResult res = run_single(run_cfg, topo, policy, run_seed(run_cfg.master_seed, 0, pi));
    out.write("epochs_" + policy.name() + ".csv", epochs_csv(res.epochs));

    const PolicyConfig pcfg = policy.resolve(topo.stations(), run_cfg.phy, run_cfg.mcs);
    const StabilityReport stability =
        stability_report(res.summary, pcfg, run_cfg.stability_tolerance);

    const std::size_t far = res.summary.farthest_station;
    std::vector<double> far_power(res.epochs.size());
    for (std::size_t t = 0; t < res.epochs.size(); ++t) far_power[t] = res.epochs[t].power_mw[far];
    const std::vector<double> ma = moving_average(far_power, run_cfg.ma_window);

    std::printf("policy %s: sum-rate %.1f bits/epoch, min-rate %.1f, max rel. violation %.4f\n",
                policy.name().c_str(), res.summary.sum_rate_bits, res.summary.min_rate_bits,
                res.summary.max_relative_violation);
    std::printf("  farthest station %zu (d = %.2f m): avg power %.3f mW, MA(%zu) final %.3f mW\n",
                far, topo.distances_m[far], res.summary.avg_power_mw[far], run_cfg.ma_window,
                ma.empty() ? 0.0 : ma.back());
    std::printf("  stability: Q/T %.3g (limit %.3g), Z/T %.3g (%.3g), G/T %.3g (%.3g) -> %s\n",
                stability.q_ratio, stability.q_limit, stability.z_ratio, stability.z_limit,
                stability.g_ratio, stability.g_limit, stability.pass ? "pass" : "FAIL");
    if (run_cfg.checks) {
      std::printf("  per-epoch checks: drift %s, telescoping %s\n",
                  res.summary.drift_ok ? "ok" : "VIOLATED",
                  res.summary.telescoping_ok ? "ok" : "VIOLATED");
    }
    names.push_back(policy.name());
    summaries.push_back(res.summary);
  }

  out.write("summary.csv", summary_csv(names, summaries));
  out.write("config.json", config_to_json(run_cfg));
  std::printf("wrote results to %s\n", out.dir().string().c_str());
  return kExitOk;
}

int cmd_cdf(const ExperimentConfig& cfg, OutputDir& out) {
  const CdfStudy study = run_cdf_study(cfg);
  out.write("cdf.csv", cdf_csv(study));
  out.write("config.json", config_to_json(cfg));
  for (std::size_t p = 0; p < study.policy_names.size(); ++p) {
    const auto& mins = study.min_rate[p].values;
    double mean = 0.0;
    for (double v : mins) mean += v;
    if (!mins.empty()) mean /= static_cast<double>(mins.size());
    std::printf("policy %s: mean min-rate %.1f bits/epoch over %zu topologies\n",
                study.policy_names[p].c_str(), mean, mins.size());
  }
  std::printf("wrote results to %s\n", out.dir().string().c_str());
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, OutputDir& out) {
  const std::vector<SweepPoint> points = run_k_sweep(cfg, cfg.k_values);
  out.write("sweep.csv", sweep_csv(points));
  out.write("config.json", config_to_json(cfg));
  for (const auto& pt : points) {
    std::printf("K=%zu %s: min-rate %.1f, sum-rate %.1f\n", pt.stations, pt.policy.c_str(),
                pt.min_rate_bits, pt.sum_rate_bits);
  }
  std::printf("wrote results to %s\n", out.dir().string().c_str());
  return kExitOk;
}

int cmd_selftest(ExperimentConfig cfg) {
  cfg.checks = true;
  cfg.store_epochs = false;
  cfg.stations = 10;
  cfg.policies = {
      {PolicyKind::Dpp, 100.0, 26000.0, 14.0, "log"},
      {PolicyKind::Esrm, 100.0, 26000.0, 14.0},
  };
  cfg.validate();

  const Topology topo =
      generate_topology(cfg.stations, cfg.topology.pl0_db, cfg.topology.exponent,
                        cfg.topology.d_max_m, topology_seed(cfg.master_seed, 0));

  bool all_ok = true;
  for (std::size_t pi = 0; pi < cfg.policies.size(); ++pi) {
    const RunResult res =
        run_single(cfg, topo, cfg.policies[pi], run_seed(cfg.master_seed, 0, pi));
    const bool ok = res.summary.drift_ok && res.summary.telescoping_ok;
    std::printf("%-4s over %zu epochs: drift bound %s (min slack %.6g), telescoping %s (min slack %.6g)\n",
                cfg.policies[pi].name().c_str(), cfg.epochs,
                res.summary.drift_ok ? "ok" : "VIOLATED", res.summary.min_drift_slack,
                res.summary.telescoping_ok ? "ok" : "VIOLATED",
                res.summary.min_telescoping_slack);
    all_ok = all_ok && ok;
  }
  if (!all_ok) {
    std::fprintf(stderr, "selftest FAILED\n");
    return kExitRuntime;
  }
  std::printf("selftest passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink OFDMA scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  Overrides ov;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) {
      sub->add_option("--config", config_path, "experiment config (JSON)")->required();
      sub->add_option("--out", out_path, "output directory")->required();
    } else {
      sub->add_option("--config", config_path, "experiment config (JSON)");
    }
    sub->add_option("--seed", ov.seed, "master seed override");
    sub->add_option("--epochs", ov.epochs, "epochs per run override");
    sub->add_option("--topologies", ov.topologies, "topology count override");
    sub->add_option("--k", ov.stations, "station count override");
    sub->add_option("--v", ov.v, "control parameter V override (all policies)");
    sub->add_option("--policies", ov.policies, "comma-separated policy filter");
    sub->add_flag("--checks", ov.checks, "verify per-epoch drift/telescoping inequalities");
  };

  CLI::App* run = app.add_subcommand("run", "single-topology run, per-epoch and summary CSV");
  CLI::App* cdf = app.add_subcommand("cdf", "multi-topology CDF study");
  CLI::App* sweep = app.add_subcommand("sweep", "station-count sweep");
  CLI::App* selftest = app.add_subcommand("selftest", "short run with per-epoch inequality checks");
  add_common(run, true);
  add_common(cdf, true);
  add_common(sweep, true);
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? default_experiment_config() : load_config(config_path);
    apply_overrides(cfg, ov);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (selftest->parsed()) return cmd_selftest(cfg);

    OutputDir out{fs::path(out_path)};
    try {
      if (run->parsed()) return cmd_run(cfg, out);
      if (cdf->parsed()) return cmd_cdf(cfg, out);
      return cmd_sweep(cfg, out);
    } catch (...) {
      out.discard_all();
      throw;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
