#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace monostab::cli {

/// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kUsage = 1;
inline constexpr int kVerdictFailed = 2;

/// Runs the tool on `args` (without the program name). Documents go to `out`
/// when no --out file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monostab::cli
