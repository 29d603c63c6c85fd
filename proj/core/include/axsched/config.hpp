// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "axsched/harness.hpp"

namespace axsched {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compiled-in defaults: the 9-RU 20 MHz uplink with the four
/// unconstrained policies (SRM, PF, RND, MM).
ExperimentConfig default_experiment_config();

/// JSON (de)serialization. Any missing key falls back to its default, so
/// a config file only needs the values it overrides. Throws ConfigError
/// on malformed or invalid input.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& file);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace axsched
