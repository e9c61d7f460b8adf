#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pickpoly::cli {

/// Exit codes: 0 success, 1 domain or validation error (JSON object on
/// `err`), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pickpoly::cli
