#pragma once

#include <string>
#include <vector>

namespace epgmatch {

// Entry point behind the epgmatch binary; callable from tests.
// Exit codes: 0 success, 1 verification FAIL, 2 usage or validation error.
int run_cli(const std::vector<std::string>& args);

}  // namespace epgmatch
