#pragma once

#include <iosfwd>

namespace nomafair {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `nomafair` executable: subcommands `pair`, `sweep`
/// and `simulate`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nomafair
