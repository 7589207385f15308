#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace contlog {

/// Runs the command line `args` (args[0] is the program name), writing the
/// JSON report to `out` and diagnostics to `err`. Returns the exit code:
/// 0 when the status is "ok", 1 for "fail"/"infeasible" and domain errors,
/// 2 for usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contlog
