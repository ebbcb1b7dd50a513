#ifndef PVSCORE_CLI_COMMANDS_HPP
#define PVSCORE_CLI_COMMANDS_HPP

#include <ostream>

namespace pvscore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitParameterError = 3;

/// Environment variable holding the default seed.
inline constexpr const char* kSeedEnvVar = "PVSCORE_SEED";

/// Entry point of the `pvscore` tool. The JSON report goes to `out` only
/// once the whole command has succeeded; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pvscore::cli

#endif  // PVSCORE_CLI_COMMANDS_HPP
