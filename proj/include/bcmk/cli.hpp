#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bcmk {

// Runs one CLI invocation (args exclude the program name). Writes the JSON
// report to `out` (or the --out file) and diagnostics to `err`. Exit codes:
// 0 pass, 1 usage or parse error, 2 mathematical infeasibility or failed check.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcmk
