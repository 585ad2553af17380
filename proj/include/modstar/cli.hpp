#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace modstar {

inline constexpr const char* kVersion = "1.0.0";

// One reproducible invocation. Identical configs produce identical CSV bytes.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;  // long flag name without dashes -> value
  std::uint64_t seed = 0;
  int chunks = 1;
  std::string output_path;  // "-" writes the CSV to standard output, no sidecar
};

enum ExitStatus : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

const std::vector<std::string>& subcommand_names();

// Writes the CSV and, for file output, `<output>.meta`. Module precondition
// failures return 1, malformed parameters return 2; messages go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modstar
