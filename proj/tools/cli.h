#ifndef PHISUM_TOOLS_CLI_H_
#define PHISUM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace phisum::cli {

// Exit codes besides 0 (success) and 1 (usage or I/O problems).
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitCapability = 4;
inline constexpr int kExitIncompatibleOrder = 5;
inline constexpr int kExitDisagreement = 6;

// Runs the tool on `args` (without the program name).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace phisum::cli

#endif  // PHISUM_TOOLS_CLI_H_
