#pragma once

namespace cubewalk {

// Entry point of the command line tool; returns the process exit code
// (0 success, 2 usage error, 3 malformed body description).
int run_cli(int argc, const char* const* argv);

}  // namespace cubewalk
