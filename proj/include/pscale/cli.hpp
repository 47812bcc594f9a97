#pragma once

#include <ostream>

namespace pscale {

/// Entry point of the `pscale` tool. Returns the process exit code:
/// 0 success, 1 numerical failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pscale
