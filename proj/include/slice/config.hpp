#ifndef SLICE_CONFIG_HPP
#define SLICE_CONFIG_HPP

#include "slice/scoring.hpp"

#include <filesystem>

namespace slice {

/// Loads an EvaluationConfig from a JSON file with sections
/// weights.{table,transformation,aggregation,composite}, mode, and an
/// optional lexicons path (resolved relative to the config file).
/// Missing keys raise ConfigError naming the key; the loaded config is
/// validated before being returned.
EvaluationConfig load_config(const std::filesystem::path& path);

/// Serializes the weight/mode portion of a config; used to embed the active
/// configuration in reports and to detect incompatible report merges.
std::string config_fingerprint(const EvaluationConfig& config);

} // namespace slice

#endif // SLICE_CONFIG_HPP
