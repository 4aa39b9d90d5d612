#pragma once

#include <ostream>

namespace gmrfinfo::cli {

/// Runs the command line. Exit status: 0 success, 1 usage or config error,
/// 2 model, domain or infeasibility error, 3 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmrfinfo::cli
