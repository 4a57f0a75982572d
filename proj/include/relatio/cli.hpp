#pragma once

// The relatio command line: prove, check and dump.
//
// Exit codes: 0 Proved / all pass, 1 Refuted / some property failed,
// 2 Exhausted / inconclusive without failures, 3 usage or input errors.

#include <ostream>

namespace relatio {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relatio
