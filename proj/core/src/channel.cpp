// SPDX-License-Identifier: Apache-2.0
#include "axsched/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "axsched/units.hpp"

namespace axsched {

std::size_t Topology::farthest_station() const {
  return static_cast<std::size_t>(
      std::max_element(distances_m.begin(), distances_m.end()) - distances_m.begin());
}

double log_distance_pathloss_db(double distance_m, double pl0_db, double exponent) {
  return pl0_db + 10.0 * exponent * std::log10(distance_m);
}

Topology generate_topology(std::size_t stations, double pl0_db, double exponent,
                           double d_max_m, std::uint64_t seed) {
  if (stations < 1) throw std::invalid_argument("topology needs at least one station");
  if (d_max_m <= 1.0) throw std::invalid_argument("d_max must exceed the 1 m minimum distance");
  Topology topo;
  topo.d_max_m = d_max_m;
  topo.pl0_db = pl0_db;
  topo.exponent = exponent;
  topo.distances_m.reserve(stations);
  topo.pathloss_db.reserve(stations);
  Rng rng(seed);
  for (std::size_t k = 0; k < stations; ++k) {
    // Uniform over the disk area: radius scales with sqrt of a uniform.
    const double d = std::max(1.0, d_max_m * std::sqrt(rng.uniform01()));
    topo.distances_m.push_back(d);
    topo.pathloss_db.push_back(log_distance_pathloss_db(d, pl0_db, exponent));
  }
  return topo;
}

std::size_t PhyConfig::symbols_per_epoch() const {
  const double ratio = t_ofdma_s / t_ofdm_symbol_s;
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument("t_ofdma must be a positive integer multiple of t_ofdm_symbol");
  }
  return static_cast<std::size_t>(rounded);
}

double PhyConfig::p_max_mw() const { return dbm_to_mw(p_max_dbm()); }

std::vector<double> PhyConfig::power_levels_mw() const {
  std::vector<double> mw(power_levels_dbm.size());
  std::transform(power_levels_dbm.begin(), power_levels_dbm.end(), mw.begin(), dbm_to_mw);
  return mw;
}

void PhyConfig::validate() const {
  if (n_rus < 1) throw std::invalid_argument("need at least one RU");
  if (subcarriers_per_ru < 1) throw std::invalid_argument("need at least one subcarrier per RU");
  if (power_levels_dbm.empty()) throw std::invalid_argument("empty transmit power set");
  if (!std::is_sorted(power_levels_dbm.begin(), power_levels_dbm.end(),
                      [](double a, double b) { return a <= b; })) {
    throw std::invalid_argument("power levels must be strictly ascending");
  }
  (void)symbols_per_epoch();
}

ChannelState sample_channel(std::size_t stations, std::size_t rus, Rng& rng) {
  ChannelState state{Matrix<double>(stations, rus)};
  for (std::size_t k = 0; k < stations; ++k) {
    for (std::size_t n = 0; n < rus; ++n) {
      state.gains(k, n) = rng.exponential();
    }
  }
  return state;
}

double snr_per_subcarrier_dbm(double p_dbm, std::size_t subcarriers, double pathloss_db,
                              double gain) {
  if (gain <= 0.0) throw std::domain_error("channel gain must be positive");
  return p_dbm - 10.0 * std::log10(static_cast<double>(subcarriers)) - pathloss_db +
         10.0 * std::log10(gain);
}

double rate_bits(std::optional<int> mcs_index, const McsTable& table, const PhyConfig& phy) {
  if (!mcs_index) return 0.0;
  return static_cast<double>(phy.subcarriers_per_ru) * table.entry(*mcs_index).rho() *
         static_cast<double>(phy.symbols_per_epoch());
}

double r_max_bits(const PhyConfig& phy, const McsTable& table) {
  return rate_bits(table.top().index, table, phy);
}

std::vector<double> aux_rate_grid(const PhyConfig& phy, const McsTable& table) {
  std::vector<double> grid;
  grid.reserve(table.size() + 1);
  grid.push_back(0.0);
  for (const auto& e : table.entries) {
    grid.push_back(rate_bits(e.index, table, phy));
  }
  return grid;
}

RateTable build_rate_table(const ChannelState& state, const Topology& topo,
                           const PhyConfig& phy, const McsTable& table) {
  const std::size_t stations = state.stations();
  const std::size_t rus = state.rus();
  if (topo.stations() != stations) throw std::invalid_argument("topology/channel size mismatch");
  if (rus != phy.n_rus) throw std::invalid_argument("channel/phy RU count mismatch");

  RateTable rt;
  rt.stations = stations;
  rt.rus = rus;
  rt.power_dbm = phy.power_levels_dbm;
  rt.power_mw = phy.power_levels_mw();
  rt.bits.resize(stations * rus * rt.levels());

  const double s_db = 10.0 * std::log10(static_cast<double>(phy.subcarriers_per_ru));
  std::size_t idx = 0;
  for (std::size_t k = 0; k < stations; ++k) {
    const double pl = topo.pathloss_db[k];
    for (std::size_t n = 0; n < rus; ++n) {
      const double gain_db = 10.0 * std::log10(state.gains(k, n));
      for (std::size_t m = 0; m < rt.levels(); ++m) {
        const double snr = rt.power_dbm[m] - s_db - pl + gain_db;
        rt.bits[idx++] = rate_bits(select_mcs(snr, table), table, phy);
      }
    }
  }
  return rt;
}

Matrix<double> rate_matrix(const ChannelState& state, const Topology& topo,
                           const PhyConfig& phy, const McsTable& table, double p_dbm) {
  const std::size_t stations = state.stations();
  const std::size_t rus = state.rus();
  if (topo.stations() != stations) throw std::invalid_argument("topology/channel size mismatch");

  Matrix<double> rates(stations, rus);
  const double s_db = 10.0 * std::log10(static_cast<double>(phy.subcarriers_per_ru));
  for (std::size_t k = 0; k < stations; ++k) {
    for (std::size_t n = 0; n < rus; ++n) {
      const double snr = p_dbm - s_db - topo.pathloss_db[k] + 10.0 * std::log10(state.gains(k, n));
      rates(k, n) = rate_bits(select_mcs(snr, table), table, phy);
    }
  }
  return rates;
}

}  // namespace axsched
