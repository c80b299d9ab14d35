#pragma once

#include <ostream>
#include <span>
#include <string>

namespace taxview::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainFailure = 1;  // validation or consistency failure
inline constexpr int kExitInputFailure = 2;   // unreadable input, bad configuration

// Runs one command line (arguments without the program name).
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace taxview::cli
