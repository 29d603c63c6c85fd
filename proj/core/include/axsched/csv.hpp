// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "axsched/harness.hpp"

namespace axsched {

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double x);

// CSV emitters. All files carry a header row, use '.' as the decimal
// separator and are locale-independent.

/// Schema: epoch,station,rate_bits,power_mw,q,z,g
std::string epochs_csv(std::span<const EpochMetrics> metrics);

/// Schema: policy,station,avg_rate_bits,avg_power_mw
std::string summary_csv(std::span<const std::string> policy_names,
                        std::span<const RunSummary> summaries);

/// Schema: policy,metric,value,cdf_level with metric in {min_rate,sum_rate}
std::string cdf_csv(const CdfStudy& study);

/// Schema: policy,K,min_rate,sum_rate
std::string sweep_csv(std::span<const SweepPoint> points);

/// Minimal CSV reader for round-trip checks; no quoting support.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Write-temp-then-rename; the target is either complete or absent.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace axsched
