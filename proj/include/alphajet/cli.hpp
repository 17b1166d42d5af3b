#pragma once

// Command-line front end. Arguments that start with '{', '[' or '"' are
// inline JSON, anything else is a path to a JSON file. Results go to `out`
// (or to --output) as JSON.
//
// Exit codes: 0 success, 1 a check or suite failed, 2 bad input. Input errors
// print {"code", "message", "location"}.

#include <ostream>
#include <span>
#include <string>

namespace alphajet::cli {

/// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out);

} // namespace alphajet::cli
