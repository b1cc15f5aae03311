#pragma once

#include <string>

namespace erc {

/// 1-based position in a source text. Zero means "unknown".
struct SourceLoc {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
  std::string expected;  // token hint, may be empty

  friend bool operator==(const ParseError&, const ParseError&) = default;
};

/// "line:col: message (expected ...)"
std::string to_string(const ParseError& error);

}  // namespace erc
