#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tvws::cli {

/// Runs the command-line tool against explicit streams; `args` excludes the
/// program name. Returns the process exit status: 0 on success, 1 on a
/// runtime failure, 2 on a usage error (bad flags, missing input files).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvws::cli
