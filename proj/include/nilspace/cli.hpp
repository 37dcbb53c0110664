#pragma once

#include <iosfwd>

namespace nilspace {

/// Command-line entry point. Exit status: 0 success, 1 usage or parse error,
/// 2 when the input violates a mathematical precondition (or a self-test
/// suite fails).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nilspace
