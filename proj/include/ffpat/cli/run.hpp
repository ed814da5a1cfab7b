#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffpat::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 2 when the configuration fails validation, 1 when a computation
/// fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffpat::cli
