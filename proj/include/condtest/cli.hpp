#pragma once

namespace condtest {

/// Full command-line front end.  Returns the process exit code:
/// 0 ok, 2 bad flags/request, 3 input validation failure, 4 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace condtest
