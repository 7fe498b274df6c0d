#pragma once

#include <string>
#include <vector>

namespace avk::cli {

// Entry point of the batch driver; argv-style arguments without the program
// name. Exit codes: 0 clean, 1 at least one property violation, 2 bad config.
int run(const std::vector<std::string>& args);

} // namespace avk::cli
