#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scm {

/// Runs one command line (without the program name). JSON goes to `out`, errors to `err`.
/// Returns 0 on success, 1 for usage, parse and validation errors, 2 for engine errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace scm
