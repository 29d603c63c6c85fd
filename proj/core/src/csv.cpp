// SPDX-License-Identifier: Apache-2.0
#include "axsched/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace axsched {

std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf.data(), ptr);
}

std::string epochs_csv(std::span<const EpochMetrics> metrics) {
  std::string out = "epoch,station,rate_bits,power_mw,q,z,g\n";
  for (const auto& m : metrics) {
    for (std::size_t k = 0; k < m.rate_bits.size(); ++k) {
      out += std::to_string(m.epoch);
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += format_double(m.rate_bits[k]);
      out += ',';
      out += format_double(m.power_mw[k]);
      out += ',';
      out += format_double(m.queues.q[k]);
      out += ',';
      out += format_double(m.queues.z[k]);
      out += ',';
      out += format_double(m.queues.g[k]);
      out += '\n';
    }
  }
  return out;
}

std::string summary_csv(std::span<const std::string> policy_names,
                        std::span<const RunSummary> summaries) {
  if (policy_names.size() != summaries.size()) {
    throw std::invalid_argument("summary_csv: one policy name per summary");
  }
  std::string out = "policy,station,avg_rate_bits,avg_power_mw\n";
  for (std::size_t p = 0; p < summaries.size(); ++p) {
    const RunSummary& s = summaries[p];
    for (std::size_t k = 0; k < s.avg_rate_bits.size(); ++k) {
      out += policy_names[p];
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += format_double(s.avg_rate_bits[k]);
      out += ',';
      out += format_double(s.avg_power_mw[k]);
      out += '\n';
    }
  }
  return out;
}

std::string cdf_csv(const CdfStudy& study) {
  std::string out = "policy,metric,value,cdf_level\n";
  const auto emit = [&out](const std::string& policy, const char* metric,
                           const CdfSeries& series) {
    for (std::size_t i = 0; i < series.values.size(); ++i) {
      out += policy;
      out += ',';
      out += metric;
      out += ',';
      out += format_double(series.values[i]);
      out += ',';
      out += format_double(series.levels[i]);
      out += '\n';
    }
  };
  for (std::size_t p = 0; p < study.policy_names.size(); ++p) {
    emit(study.policy_names[p], "min_rate", study.min_rate[p]);
    emit(study.policy_names[p], "sum_rate", study.sum_rate[p]);
  }
  return out;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "policy,K,min_rate,sum_rate\n";
  for (const auto& pt : points) {
    out += pt.policy;
    out += ',';
    out += std::to_string(pt.stations);
    out += ',';
    out += format_double(pt.min_rate_bits);
    out += ',';
    out += format_double(pt.sum_rate_bits);
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace axsched
