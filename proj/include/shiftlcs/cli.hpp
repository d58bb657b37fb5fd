#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftlcs {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,     // malformed input, out-of-domain parameters
    kExitConfig = 2,      // usage or configuration fault
    kExitAssertion = 3,   // an internal check (e.g. the SHIFT floor) failed
};

/// Runs `shiftlcs <subcommand> ...`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftlcs
