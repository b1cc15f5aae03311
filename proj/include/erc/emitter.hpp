#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "erc/emdm.hpp"
#include "erc/formula.hpp"
#include "erc/translator.hpp"

namespace erc {

class EmitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scheme listing: one block per set in translation order, then the
/// nonrelational constraints. Implicit keys are not printed. Throws
/// EmitError when check_scheme reports errors.
std::string emit_text(const EmdmScheme& scheme, Glyphs glyphs = Glyphs::Ascii);

/// Replaces → ↔ • ∀ ∈ ≠ ≤ ≥ ∧ ∨ ¬ ⇒ by their ASCII spellings.
std::string normalize_glyphs(std::string_view text);

/// Human-readable report: counting conventions, tally, steps, diagnostics,
/// questions and enrichment actions.
std::string emit_report(const TranslationReport& report);

inline constexpr int kStructuredVersion = 1;

/// JSON document with top-level keys version, sets, constraints,
/// provenance and, when given, report.
std::string emit_structured(const EmdmScheme& scheme, const TranslationReport* report = nullptr);

struct StructuredDocument {
  EmdmScheme scheme;
  std::optional<TranslationReport> report;
  std::vector<std::string> warnings;  // unknown optional fields
};

class StructuredFormatError : public std::runtime_error {
 public:
  StructuredFormatError(std::string message, std::string path, int line = 0, int column = 0);

  const std::string& path() const { return path_; }  // JSON pointer
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string path_;
  int line_;
  int column_;
};

StructuredDocument load_structured(std::string_view text);

}  // namespace erc
