#include "erc/diagnostic.hpp"

#include <algorithm>

#include "erc/source.hpp"

namespace erc {

std::string to_string(const ParseError& error) {
  std::string out = std::to_string(error.line) + ":" + std::to_string(error.column) + ": " + error.message;
  if (!error.expected.empty())
    out += " (expected " + error.expected + ")";
  return out;
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Error:
      return "error";
    case Severity::Warning:
      return "warning";
    case Severity::Info:
      return "info";
  }
  return "info";
}

std::optional<Severity> severity_from_string(std::string_view text) {
  if (text == "error")
    return Severity::Error;
  if (text == "warning")
    return Severity::Warning;
  if (text == "info")
    return Severity::Info;
  return std::nullopt;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return count_severity(diagnostics, Severity::Error) > 0;
}

std::size_t count_severity(const std::vector<Diagnostic>& diagnostics, Severity severity) {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [&](const Diagnostic& d) { return d.severity == severity; }));
}

std::string to_string(const Diagnostic& d) {
  std::string out{to_string(d.severity)};
  out += "[" + d.code + "]";
  if (!d.element.empty())
    out += " " + d.element;
  out += ": " + d.message;
  return out;
}

}  // namespace erc
