#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wavekit::app {

/// Entry point of the `wavekit` command. `args` excludes the program name.
/// Exit codes: 0 success, 1 self-check failure or non-convergence,
/// 2 configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace wavekit::app
