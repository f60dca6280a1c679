#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vkr {

/// Runs one `vkr` subcommand. `args` excludes the program name. Returns the
/// exit status: 0 success, 1 invalid input or usage, 2 valid input whose
/// requested realization does not exist.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vkr
