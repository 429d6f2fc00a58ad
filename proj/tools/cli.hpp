#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgcm::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, cap_hit = 3 };

/// Runs the `hgcm` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgcm::cli
