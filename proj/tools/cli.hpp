#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbargain::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kArgumentError = 2;

/// Runs one CLI invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbargain::cli
