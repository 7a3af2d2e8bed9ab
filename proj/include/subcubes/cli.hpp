#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subcubes {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_resource_abort = 3,
    exit_mismatch = 4,
};

/// Runs one command line (without the program name). Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subcubes
