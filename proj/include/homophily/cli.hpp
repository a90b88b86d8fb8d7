#pragma once

// Command-line front end. Subcommands: compute, properties, agree, grid,
// generate, directed-witness. Every report starts with a header holding the
// tool version, the seed (when one is used) and a hash of the resolved
// configuration, so identical configurations give identical reports.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace homophily {

inline constexpr std::string_view kToolName = "homophily";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitUndefined = 3,
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Formats a value for CSV output: four decimals, with "-0.0000" printed as
/// "0.0000".
std::string csv_number(double v);

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homophily
