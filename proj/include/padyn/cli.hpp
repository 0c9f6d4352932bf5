#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padyn {

// Exit codes: 0 success, 1 domain or usage error, 2 precision exhausted,
// 3 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace padyn
