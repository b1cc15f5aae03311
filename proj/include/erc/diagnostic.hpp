#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erc {

enum class Severity { Error, Warning, Info };

/// A message produced while translating or checking. Errors abort emission;
/// warnings and infos never do.
struct Diagnostic {
  Severity severity = Severity::Info;
  std::string code;     // stable, kebab-case
  std::string message;
  std::string element;  // id of the offending source or scheme element

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string_view to_string(Severity severity);
std::optional<Severity> severity_from_string(std::string_view text);

bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::size_t count_severity(const std::vector<Diagnostic>& diagnostics, Severity severity);

/// "error[code] element: message"
std::string to_string(const Diagnostic& diagnostic);

}  // namespace erc
