#pragma once

#include <iosfwd>

namespace torq {

/// Entry point of the `torq` command line tool. Returns 0 on success, 1 when
/// a verification residual exceeds its tolerance or a mathematical
/// precondition fails, 2 on usage and input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torq
