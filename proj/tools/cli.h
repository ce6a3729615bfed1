#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isotree {

// Runs the command line; returns the process exit code. 0: success, 1: some
// identity failed, 2: error (message as JSON on err).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isotree
