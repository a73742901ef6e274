#pragma once

// Command-line front end: single runs, master-equation runs, damping sweeps,
// analytic efficiencies, strong-damping outcomes, and figure reproduction.

#include <iostream>

namespace stirap {

// Returns the process exit status: 0 on success, 2 on unparseable flags or
// invalid parameter values, 1 on runtime failures (with the failing
// parameters echoed to `err`). Streams default to stdout/stderr and are
// injectable for tests.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace stirap
