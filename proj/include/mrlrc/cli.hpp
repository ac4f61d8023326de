#pragma once

#include <iosfwd>

namespace mrlrc {

/// Runs the `mrlrc` command line. Exit codes: 0 ok, 1 negative result
/// (FAIL, UNDECODABLE), 2 usage or format error, 3 budget exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mrlrc
