#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "drg/scenario.hpp"

namespace drg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses one experiment document. Unknown keys are rejected; every error
/// message names the offending field (or the parse position).
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace drg
