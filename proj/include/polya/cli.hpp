#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polya {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitInputError = 2 };

/// Runs one command line (args[0] is the program name) and returns its exit code.
///
/// Precision comes from --prec, else the POLYA_PREC environment variable, else 50 digits.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polya
