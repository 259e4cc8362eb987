#pragma once

#include <iosfwd>

namespace subcheck::suite {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// `verify` and `export` subcommands; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subcheck::suite
