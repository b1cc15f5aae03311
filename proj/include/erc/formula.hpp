#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "erc/source.hpp"

namespace erc {

enum class Glyphs { Ascii, Unicode };

enum class CompareOp { Equal, NotEqual, Less, LessEqual, Greater, GreaterEqual };

std::string_view to_string(CompareOp op, Glyphs glyphs = Glyphs::Ascii);

/// Immutable term of a constraint formula: a bound variable, the application
/// of a mapping to a term, or a literal. Copies share structure.
class Term {
 public:
  enum class Kind { Variable, Apply, Integer, Text };

  static Term variable(std::string name);
  static Term apply(std::string mapping, Term argument);
  static Term integer(std::int64_t value);
  static Term text(std::string value);

  Kind kind() const;
  /// Variable name, applied mapping name, or text literal.
  const std::string& name() const;
  const Term& argument() const;  // Apply only
  std::int64_t integer_value() const;

  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Immutable first-order constraint formula. Quantifiers are single-variable;
/// "(forall x, y in S)" is sugar for two nested quantifiers over S.
class Formula {
 public:
  enum class Kind { Forall, Implies, And, Or, Not, Compare };

  static Formula forall(std::string variable, std::string domain, Formula body);
  static Formula implication(Formula premise, Formula conclusion);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula negation(Formula operand);
  static Formula compare(CompareOp op, Term lhs, Term rhs);

  Kind kind() const;

  const std::string& variable() const;  // Forall
  const std::string& domain() const;    // Forall
  const Formula& body() const;          // Forall
  const Formula& left() const;          // Implies, And, Or
  const Formula& right() const;         // Implies, And, Or
  const Formula& operand() const;       // Not
  CompareOp op() const;                 // Compare
  const Term& lhs() const;              // Compare
  const Term& rhs() const;              // Compare

  friend bool operator==(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaParseResult {
  std::optional<Formula> formula;
  std::vector<ParseError> errors;

  bool ok() const { return formula.has_value(); }
};

/// Parses the ASCII constraint syntax; the usual mathematical glyphs
/// (∀ ∈ ≠ ≤ ≥ ∧ ∨ ¬ ⇒) are accepted as synonyms. Positions in errors are
/// shifted by `origin`, which is where the text starts in its enclosing file.
FormulaParseResult parse_formula(std::string_view source, SourceLoc origin = {1, 1});

/// Prints with minimal parentheses; re-applies the "x, y in S" sugar to
/// directly nested quantifiers over the same domain.
std::string print_formula(const Formula& formula, Glyphs glyphs = Glyphs::Ascii);
std::string print_term(const Term& term);

std::set<std::string> free_variables(const Formula& formula);

/// Number of distinct quantified variables.
std::size_t quantifier_count(const Formula& formula);

/// (variable, domain) pairs in binding order.
std::vector<std::pair<std::string, std::string>> quantified_variables(const Formula& formula);

/// Every mapping name applied anywhere in the formula, in order of appearance.
std::vector<std::string> applied_mappings(const Formula& formula);

}  // namespace erc
