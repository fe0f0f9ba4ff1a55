#ifndef MANOHOG_TOOLS_CLI_H_
#define MANOHOG_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace manohog::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNotConverged = 3;

// Runs `manohog <subcommand> ...`; args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace manohog::cli

#endif  // MANOHOG_TOOLS_CLI_H_
