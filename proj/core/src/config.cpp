// SPDX-License-Identifier: Apache-2.0
#include "axsched/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace axsched {

using nlohmann::json;

ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  cfg.policies = {
      {PolicyKind::Srm},
      {PolicyKind::Pf},
      {PolicyKind::Rnd},
      {PolicyKind::Mm},
  };
  return cfg;
}

namespace {

PolicySpec policy_from_json(const json& j, const PolicySpec& defaults) {
  PolicySpec spec = defaults;
  spec.kind = parse_policy_kind(j.at("kind").get<std::string>());
  spec.v = j.value("v", spec.v);
  spec.r_min_bits = j.value("r_min_bits", spec.r_min_bits);
  spec.p_max_dbm = j.value("p_max_dbm", spec.p_max_dbm);
  spec.utility = j.value("utility", spec.utility);
  return spec;
}

json policy_to_json(const PolicySpec& spec) {
  json j;
  j["kind"] = spec.name();
  j["v"] = spec.v;
  j["r_min_bits"] = spec.r_min_bits;
  j["p_max_dbm"] = spec.p_max_dbm;
  if (spec.kind == PolicyKind::Dpp) j["utility"] = spec.utility;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg = default_experiment_config();

  if (j.contains("phy")) {
    const json& p = j.at("phy");
    cfg.phy.n_rus = p.value("n_rus", cfg.phy.n_rus);
    cfg.phy.subcarriers_per_ru = p.value("subcarriers_per_ru", cfg.phy.subcarriers_per_ru);
    cfg.phy.t_ofdma_s = p.value("t_ofdma_s", cfg.phy.t_ofdma_s);
    cfg.phy.t_ofdm_symbol_s = p.value("t_ofdm_symbol_s", cfg.phy.t_ofdm_symbol_s);
    cfg.phy.power_levels_dbm = p.value("power_levels_dbm", cfg.phy.power_levels_dbm);
  }
  if (j.contains("topology")) {
    const json& t = j.at("topology");
    cfg.topology.pl0_db = t.value("pl0_db", cfg.topology.pl0_db);
    cfg.topology.exponent = t.value("exponent", cfg.topology.exponent);
    cfg.topology.d_max_m = t.value("d_max_m", cfg.topology.d_max_m);
  }
  if (j.contains("mcs_table_file")) {
    const std::string file = j.at("mcs_table_file").get<std::string>();
    if (!file.empty()) cfg.mcs = load_mcs_table(std::filesystem::path(file));
  }
  cfg.stations = j.value("stations", cfg.stations);
  cfg.k_values = j.value("k_values", cfg.k_values);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.topologies = j.value("topologies", cfg.topologies);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.checks = j.value("checks", cfg.checks);
  cfg.store_epochs = j.value("store_epochs", cfg.store_epochs);
  cfg.parallel = j.value("parallel", cfg.parallel);
  cfg.ma_window = j.value("ma_window", cfg.ma_window);
  cfg.stability_tolerance = j.value("stability_tolerance", cfg.stability_tolerance);

  if (j.contains("policies")) {
    cfg.policies.clear();
    const PolicySpec defaults;
    for (const json& pj : j.at("policies")) {
      cfg.policies.push_back(policy_from_json(pj, defaults));
    }
  }
  return cfg;
}

json config_as_json(const ExperimentConfig& cfg) {
  json j;
  j["phy"] = {
      {"n_rus", cfg.phy.n_rus},
      {"subcarriers_per_ru", cfg.phy.subcarriers_per_ru},
      {"t_ofdma_s", cfg.phy.t_ofdma_s},
      {"t_ofdm_symbol_s", cfg.phy.t_ofdm_symbol_s},
      {"power_levels_dbm", cfg.phy.power_levels_dbm},
  };
  j["topology"] = {
      {"pl0_db", cfg.topology.pl0_db},
      {"exponent", cfg.topology.exponent},
      {"d_max_m", cfg.topology.d_max_m},
  };
  j["stations"] = cfg.stations;
  j["k_values"] = cfg.k_values;
  j["epochs"] = cfg.epochs;
  j["topologies"] = cfg.topologies;
  j["master_seed"] = cfg.master_seed;
  j["checks"] = cfg.checks;
  j["store_epochs"] = cfg.store_epochs;
  j["parallel"] = cfg.parallel;
  j["ma_window"] = cfg.ma_window;
  j["stability_tolerance"] = cfg.stability_tolerance;
  j["policies"] = json::array();
  for (const auto& p : cfg.policies) j["policies"].push_back(policy_to_json(p));
  return j;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ExperimentConfig cfg = config_from_json(j);
    cfg.validate();
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_as_json(cfg).dump(2) + "\n";
}

}  // namespace axsched
