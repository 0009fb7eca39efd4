#pragma once

namespace chaoslab::cli {

// Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 violated
// precondition or domain error, 1 anything else.
int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace chaoslab::cli
