#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flatpunct {

inline constexpr const char* kToolVersion = "1.0.0";

// Runs the command line (without the program name). Reports go to `out`
// as JSON, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatpunct
