#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blflux::cli {

enum ExitCode : int {
    exit_ok = 0,        // success / positive verdict
    exit_negative = 1,  // not in class M, not S-shaped
    exit_input = 2,     // parse, domain or option error
    exit_io = 3,        // cannot write output
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blflux::cli
