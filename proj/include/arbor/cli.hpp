#pragma once

#include <iosfwd>

namespace arbor {

/// Exit codes: 0 success, 1 other failure, 2 usage or input error, 3 resource limit.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arbor
