#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ontoclass {

// Runs the command-line front end. Exit codes: 0 success, 2 configuration
// error, 3 data error, 1 unexpected failure. `args` excludes the program
// name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ontoclass
