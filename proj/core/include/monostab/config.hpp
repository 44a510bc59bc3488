#pragma once

// Model configuration documents (JSON syntax).
//
//   {
//     "family": "ar1" | "rca1" | "portfolio" | "resource" | "piecewise_exp",
//     "params": { ... family specific ... },
//     "shocks": [ {"type": "uniform", "a": -1, "b": 1}, ... ],
//     "run":    { ... optional run defaults, read by the CLI ... }
//   }
//
// Unknown fields are rejected. Errors are ConfigError with a JSON path such as
// `$.params.A[0][1]`. See docs/model-config.md for the full schema.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "monostab/model.hpp"

namespace monostab {

/// Builds a model from a parsed configuration. Throws ConfigError.
TransitionModel model_from_json(const nlohmann::json& config);

/// Parses and builds; syntax errors become ConfigError at path `$`.
TransitionModel model_from_string(const std::string& text);

/// Reads, parses and builds a model file.
TransitionModel load_model_file(const std::filesystem::path& path);

/// Reads and parses a configuration file without building the model.
nlohmann::json read_config_file(const std::filesystem::path& path);

Marginal marginal_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json marginal_to_json(const Marginal& m);

/// 16 hex digits of FNV-1a over the canonical (sorted-key, compact) dump.
std::string config_hash(const nlohmann::json& config);

}  // namespace monostab
