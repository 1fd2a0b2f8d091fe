#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdw {

// Runs one CLI invocation. Returns the process exit code: 0 on
// success/pass, 1 on mathematical failure, 2 on usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdw
