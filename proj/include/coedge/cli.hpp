#pragma once

#include <iosfwd>

namespace coedge {

/// Runs the `coedge` command line. Data goes to `out` (or the --out file),
/// diagnostics to `err`. Returns 0 on success, 2 on a usage error, 1 on a
/// runtime failure such as a refused computation or a malformed input file.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coedge
