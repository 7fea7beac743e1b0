#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmdisc::cli {

/// Runs the command line `args` (without the program name). Results go to
/// `out`; the resolved configuration and diagnostics go to `err`.
/// Returns 0 on success, 1 for errors raised by the library or failed
/// verifications, 2 for usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmdisc::cli
