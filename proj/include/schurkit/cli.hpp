#pragma once

#include <string>
#include <vector>

namespace schurkit {

// Exit codes: 0 success, 1 domain error, 2 budget timeout, 3 usage error.
int cli_run(const std::vector<std::string>& args);

} // namespace schurkit
