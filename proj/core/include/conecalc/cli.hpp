#pragma once

// Command-line driver, callable in-process so tests can exercise the
// subcommands without spawning a binary.
//
// Exit codes: 0 success, 1 asserted verdict failure (or a hard numerical
// failure of a direct computation), 2 usage or configuration error.

#include <string>
#include <vector>

namespace conecalc {

// `args` excludes the program name, in normal order.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace conecalc
