#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace erc {

/// The `erc` command line without the process around it. `args` excludes
/// the program name. Prompts go to `err`, answers are read from `in`.
/// Returns 0 on success, 1 for semantic failures, 2 for unreadable or
/// malformed input and usage errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace erc
