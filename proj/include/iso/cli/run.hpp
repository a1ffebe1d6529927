#pragma once

#include <iosfwd>
#include <string>

#include "iso/cli/config.hpp"
#include "iso/cli/output.hpp"

namespace iso::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitNumerical = 3 };

const char* version();

/// Computes the command's result. Throws iso::Error.
CommandResult execute(const RunConfig& config);

/// execute + render + write. Errors are reported on `err` and mapped to exit
/// codes: 2 for invalid input, 3 for numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main(int argc, char** argv);

}  // namespace iso::cli
