#pragma once

#include <string>
#include <vector>

namespace ffdot {

// The full CLI, callable in-process (args excludes the program name).
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or configuration error.
int ffdot_main(const std::vector<std::string>& args);

}  // namespace ffdot
