#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tvalue {

// Runs one command line (args excludes the program name). Errors are
// reported on `err` as a single "error: ..." line with exit status 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvalue
