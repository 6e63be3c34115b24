#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qexplain::cli {

enum ExitCode : int { ok = 0, usage_error = 1, semantic_error = 2, cap_exceeded = 3 };

/// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qexplain::cli
