// SPDX-License-Identifier: Apache-2.0
#include "axsched/mcs.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace axsched {

const McsEntry& McsTable::entry(int index) const {
  for (const auto& e : entries) {
    if (e.index == index) return e;
  }
  throw std::invalid_argument("unknown MCS index " + std::to_string(index));
}

void McsTable::validate() const {
  if (entries.empty()) throw std::invalid_argument("MCS table is empty");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.bits_per_symbol <= 0 || e.code_rate <= 0.0 || e.code_rate > 1.0) {
      throw std::invalid_argument("invalid MCS entry at position " + std::to_string(i));
    }
    if (i > 0) {
      if (entries[i - 1].min_snr_dbm >= e.min_snr_dbm) {
        throw std::invalid_argument("MCS SNR thresholds must be strictly increasing");
      }
      if (entries[i - 1].rho() >= e.rho()) {
        throw std::invalid_argument("MCS bit rates must be strictly increasing");
      }
    }
  }
}

int modulation_bits(const std::string& name) {
  if (name == "BPSK") return 1;
  if (name == "QPSK") return 2;
  if (name == "16-QAM") return 4;
  if (name == "64-QAM") return 6;
  if (name == "256-QAM") return 8;
  if (name == "1024-QAM") return 10;
  throw std::invalid_argument("unknown modulation '" + name + "'");
}

McsTable default_mcs_table() {
  McsTable t;
  t.entries = {
      {1, "BPSK", 1, 1.0 / 2.0, -82.0},    {2, "QPSK", 2, 1.0 / 2.0, -79.0},
      {3, "QPSK", 2, 3.0 / 4.0, -77.0},    {4, "16-QAM", 4, 1.0 / 2.0, -74.0},
      {5, "16-QAM", 4, 3.0 / 4.0, -70.0},  {6, "64-QAM", 6, 2.0 / 3.0, -66.0},
      {7, "64-QAM", 6, 3.0 / 4.0, -65.0},  {8, "64-QAM", 6, 5.0 / 6.0, -64.0},
      {9, "256-QAM", 8, 3.0 / 4.0, -59.0}, {10, "256-QAM", 8, 5.0 / 6.0, -57.0},
  };
  t.validate();
  return t;
}

namespace {

double parse_code_rate(const std::string& token) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) {
    return std::stod(token);
  }
  const double num = std::stod(token.substr(0, slash));
  const double den = std::stod(token.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("zero code-rate denominator");
  return num / den;
}

}  // namespace

McsTable load_mcs_table(std::istream& in) {
  McsTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int index;
    std::string modulation, rate_token;
    double min_snr;
    if (!(fields >> index)) continue;  // blank or comment-only line
    if (!(fields >> modulation >> rate_token >> min_snr)) {
      throw std::invalid_argument("malformed MCS table line " + std::to_string(lineno));
    }
    McsEntry e;
    e.index = index;
    e.modulation = modulation;
    e.bits_per_symbol = modulation_bits(modulation);
    e.code_rate = parse_code_rate(rate_token);
    e.min_snr_dbm = min_snr;
    t.entries.push_back(std::move(e));
  }
  t.validate();
  return t;
}

McsTable load_mcs_table(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open MCS table file " + file.string());
  return load_mcs_table(in);
}

std::optional<int> select_mcs(double snr_dbm, const McsTable& table) {
  std::optional<int> best;
  for (const auto& e : table.entries) {
    if (e.min_snr_dbm <= snr_dbm) best = e.index;
  }
  return best;
}

}  // namespace axsched
