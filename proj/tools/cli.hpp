#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricdiff::cli {

/// Exit status: 0 success, 1 a verification failed, 2 malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricdiff::cli
