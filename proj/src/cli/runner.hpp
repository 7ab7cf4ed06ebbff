#pragma once

namespace flowlab {
namespace cli {

// Full command-line entry point. Returns the process exit code:
// 0 success, 2 validation error, 3 solver failure.
int run_main(int argc, const char* const* argv);

}  // namespace cli
}  // namespace flowlab
