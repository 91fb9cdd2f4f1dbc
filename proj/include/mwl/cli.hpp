#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mwl {

/// Command-line entry point without the program name.  Exit codes: 0 on
/// success, 2 when a mathematical check fails, 1 on input or configuration
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwl
