// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace axsched {

/// One modulation-and-coding scheme. `rho()` is the bit rate per data
/// subcarrier per OFDM symbol; `min_snr_dbm` is the lowest per-subcarrier
/// received power at which the scheme is usable.
struct McsEntry {
  int index = 0;  // 1-based scheme index
  std::string modulation;
  int bits_per_symbol = 0;
  double code_rate = 0.0;
  double min_snr_dbm = 0.0;

  double rho() const { return bits_per_symbol * code_rate; }
};

/// Ordered MCS ladder. Entries must be sorted so that both the SNR
/// threshold and the bit rate are strictly increasing.
struct McsTable {
  std::vector<McsEntry> entries;

  std::size_t size() const { return entries.size(); }
  const McsEntry& top() const { return entries.back(); }

  /// Entry with the given 1-based index; throws if absent.
  const McsEntry& entry(int index) const;

  /// Throws std::invalid_argument if the ladder invariants are violated.
  void validate() const;
};

/// Bits-per-symbol for a modulation name ("BPSK", "QPSK", "16-QAM", ...).
int modulation_bits(const std::string& name);

/// The 20 MHz ladder for 24-subcarrier resource units.
McsTable default_mcs_table();

/// Loads a plain-text table: one `index modulation code_rate min_snr_dbm`
/// row per line, `#` comments and blank lines ignored. Code rate may be
/// a fraction ("5/6") or a decimal.
McsTable load_mcs_table(std::istream& in);
McsTable load_mcs_table(const std::filesystem::path& file);

/// Largest usable scheme index at the given SNR, or nullopt when the
/// signal is below the bottom of the ladder.
std::optional<int> select_mcs(double snr_dbm, const McsTable& table);

}  // namespace axsched
