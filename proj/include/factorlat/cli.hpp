#pragma once

#include <iosfwd>

namespace factorlat {

// Exit codes: 0 success, 1 usage error, 2 solver failure (or every sweep
// point failed), 3 factorization certification failure. Artifacts go to
// --out (or `out` when no path is given); human-readable diagnostics to
// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace factorlat
