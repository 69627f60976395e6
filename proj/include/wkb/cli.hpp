#ifndef WKB_CLI_HPP
#define WKB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

// Command dispatch behind the wkb binary. Exposed as a library call so the
// exit-code and JSON contracts are testable in-process.
//
// Exit codes: 0 answer yes, 1 answer no, 2 usage/parse error,
// 3 incomplete (bound-limited no), 4 budget exhausted.

namespace wkb::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wkb::cli

#endif  // WKB_CLI_HPP
