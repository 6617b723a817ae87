// Command-line frontend. Exit codes: 0 equal / ok, 1 not equal, 2 invalid
// input or usage, 3 unfolding limit exceeded.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shareq {

/// `args` excludes the program name. Reads SHAREQ_SEED for generator seeds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shareq
