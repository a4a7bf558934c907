#pragma once

namespace ordsparse::cli {

/// Entry point shared by the binary and the tests. Returns the process exit
/// code: 0 on success, 2 on usage/configuration errors, 3 on solver faults.
int run_cli(int argc, const char* const* argv);

}  // namespace ordsparse::cli
