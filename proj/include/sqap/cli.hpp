#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sqap::cli {

enum ExitCode : int {
    kSuccess = 0,
    // A square was found (witness, verify) or a check failed (lower, reduce --verify).
    kWitness = 1,
    // Usage or domain error; a JSON error object goes to `out`.
    kError = 2,
};

/// Parses `args` (without the program name) and runs one subcommand:
///   witness, verify, construct, reduce, lower, scan-nqr, exponent, sweep.
/// Records go to `out` (or --output) as JSON lines or CSV; a human summary
/// goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sqap::cli
