#pragma once

#include <string>
#include <vector>

namespace steklov::cli {

/// Exit codes: 0 success, 2 config/validation error, 3 numerical failure.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

} // namespace steklov::cli
