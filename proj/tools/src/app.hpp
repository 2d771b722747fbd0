#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rulfis::cli {

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on success, 2 for usage and configuration errors, 1 for anything else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rulfis::cli
