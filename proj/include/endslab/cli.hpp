#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace endslab::cli {

// Exit codes.
constexpr int ok = 0;
constexpr int property_failure = 1;
constexpr int usage_error = 2;

// Runs one command line (without the program name). Everything the command
// prints goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endslab::cli
