// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "axsched/matrix.hpp"
#include "axsched/mcs.hpp"
#include "axsched/rng.hpp"

namespace axsched {

/// Station placement around the access point plus the resulting
/// log-distance pathloss, PL_k = PL0 + 10 a log10(d_k) dB.
struct Topology {
  std::vector<double> distances_m;
  std::vector<double> pathloss_db;
  double d_max_m = 0.0;
  double pl0_db = 0.0;
  double exponent = 0.0;

  std::size_t stations() const { return distances_m.size(); }
  std::size_t farthest_station() const;
};

double log_distance_pathloss_db(double distance_m, double pl0_db, double exponent);

/// Uniform-in-area placement on the disk of radius d_max, clamped to a
/// 1 m minimum distance. Deterministic for a given seed.
Topology generate_topology(std::size_t stations, double pl0_db, double exponent,
                           double d_max_m, std::uint64_t seed);

/// Static PHY parameters of the OFDMA uplink.
struct PhyConfig {
  std::size_t n_rus = 9;
  std::size_t subcarriers_per_ru = 24;
  double t_ofdma_s = 3.2e-3;
  double t_ofdm_symbol_s = 16e-6;
  std::vector<double> power_levels_dbm{8, 10, 12, 14, 16, 18, 20};

  std::size_t symbols_per_epoch() const;
  double p_max_dbm() const { return power_levels_dbm.back(); }
  double p_max_mw() const;
  std::vector<double> power_levels_mw() const;

  /// Throws std::invalid_argument on inconsistent parameters
  /// (non-integer symbol count, unsorted power levels, ...).
  void validate() const;
};

/// Per-epoch block-fading state: linear power gains g_{k,n}, one scalar
/// per (station, RU), unit mean, independent across epochs.
struct ChannelState {
  Matrix<double> gains;

  std::size_t stations() const { return gains.rows(); }
  std::size_t rus() const { return gains.cols(); }
};

/// Draws a fresh Rayleigh-fading state: each gain is a unit-mean
/// exponential (amplitude-squared) variate.
ChannelState sample_channel(std::size_t stations, std::size_t rus, Rng& rng);

/// Received per-subcarrier SNR in dBm when power p is split uniformly
/// over the RU's subcarriers. Throws std::domain_error for gain <= 0.
double snr_per_subcarrier_dbm(double p_dbm, std::size_t subcarriers,
                              double pathloss_db, double gain);

/// Bits per scheduling epoch for a selected scheme: S * rho * T/T_ofdm.
/// nullopt (no usable scheme) maps to 0 bits.
double rate_bits(std::optional<int> mcs_index, const McsTable& table, const PhyConfig& phy);

/// Bits per epoch at the top of the ladder; the hard per-RU cap.
double r_max_bits(const PhyConfig& phy, const McsTable& table);

/// Ascending auxiliary-rate grid {0, S rho_1 T/T_ofdm, ..., R_max}.
std::vector<double> aux_rate_grid(const PhyConfig& phy, const McsTable& table);

/// Achievable bits per epoch for every (station, RU, power level).
struct RateTable {
  std::size_t stations = 0;
  std::size_t rus = 0;
  std::vector<double> power_dbm;  // ascending
  std::vector<double> power_mw;   // ascending
  std::vector<double> bits;       // stations * rus * levels, level-major innermost

  std::size_t levels() const { return power_dbm.size(); }
  double at(std::size_t k, std::size_t n, std::size_t m) const {
    return bits[(k * rus + n) * power_dbm.size() + m];
  }
  std::span<const double> at(std::size_t k, std::size_t n) const {
    return {bits.data() + (k * rus + n) * power_dbm.size(), power_dbm.size()};
  }
};

RateTable build_rate_table(const ChannelState& state, const Topology& topo,
                           const PhyConfig& phy, const McsTable& table);

/// K x N rate matrix at a single transmit power.
Matrix<double> rate_matrix(const ChannelState& state, const Topology& topo,
                           const PhyConfig& phy, const McsTable& table, double p_dbm);

}  // namespace axsched
