#pragma once

#include <string>
#include <vector>

namespace pmc {

// Exit codes: 0 success, 1 input/validation error, 2 infeasible outcome,
// 3 internal error or guard exceeded.
int run_cli(const std::vector<std::string>& args);

}  // namespace pmc
