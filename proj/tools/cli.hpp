#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace surfcov::cli {

// Exit codes: 0 success, 1 internal failure, 2 invalid input or file,
// 3 numeric instability. JSON goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surfcov::cli
