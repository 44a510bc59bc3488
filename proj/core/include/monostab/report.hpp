#pragma once

// JSON and CSV renderings of certificates and Monte Carlo reports.
//
// Every document carries the tool version, the seed and the config hash.
// Doubles are written in shortest round-trip form, so parsing a report gives
// back the exact values. Keys are sorted; nothing run-dependent other than
// the inputs (e.g. worker count or wall time) is ever written.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monostab/certificate.hpp"
#include "monostab/montecarlo.hpp"

namespace monostab {

/// Library version string, e.g. "0.1.0".
const char* version();

struct RunContext {
  nlohmann::json config = nlohmann::json::object();
  std::string config_hash;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const StateVector& x);
nlohmann::json to_json(const ShockVector& v);
nlohmann::json to_json(const OrderedNormalPair& pair);
nlohmann::json to_json(const BoundingPair& bp);
nlohmann::json to_json(const SplittingCertificate& cert);
nlohmann::json to_json(const UniquenessProbe& probe);
nlohmann::json to_json(const ContractionEstimate& est);
nlohmann::json to_json(const ConcavityVerdict& verdict);
nlohmann::json to_json(const BinomialEstimate& b);
nlohmann::json to_json(const TightnessReport& t);
nlohmann::json to_json(const CouplingResult& c);
nlohmann::json to_json(const CrossingResult& c);
nlohmann::json to_json(const ConvergenceReport& c);

/// Full certificate document.
nlohmann::json certificate_document(const StabilityReport& report, const RunContext& ctx);

/// Wraps a Monte Carlo result with the common header fields.
nlohmann::json report_document(const std::string& kind, nlohmann::json body, const RunContext& ctx);

/// Pretty-printed with two-space indent and a trailing newline.
std::string render(const nlohmann::json& doc);

/// CSV with a `# monostab <version> seed=<seed> config_hash=<hash>` comment
/// line, then `rep,step,coord_0,...` and one row per state.
std::string trajectories_csv(const std::vector<Trajectory>& runs, const RunContext& ctx);

/// Writes to a temporary file in the same directory, then renames it over
/// `path`. Throws Error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace monostab
