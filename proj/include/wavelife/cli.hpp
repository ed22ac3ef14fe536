#pragma once

#include <iosfwd>

namespace wavelife {

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 on success, 2 on a failed check or an Inconsistent verdict, 1 on errors.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wavelife
