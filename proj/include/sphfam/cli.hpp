#pragma once

// The sphfam command line as a library call, so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace sphfam {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphfam
