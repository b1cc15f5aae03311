#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erc/answers.hpp"
#include "erc/diagnostic.hpp"
#include "erc/emdm.hpp"
#include "erc/enrichment.hpp"
#include "erc/ermodel.hpp"

namespace erc {

enum class StepKind {
  EntitySet,
  ComputedSet,
  RelationshipSet,
  Role,
  StructuralFunction,
  Attribute,
  Uniqueness,            // single uniqueness
  Compulsory,
  ConcatenatedUniqueness,
  Tuple,
  Inclusion,
  Nonrelational,
};

std::string_view to_string(StepKind kind);
std::optional<StepKind> step_kind_from_string(std::string_view text);

struct Step {
  StepKind kind = StepKind::EntitySet;
  std::string source;    // model element id
  std::string produced;  // scheme element id

  friend bool operator==(const Step&, const Step&) = default;
};

/// Element counts behind the step bound S + A + C, where
///   S = E + CS + R,  A = RA + SF + EN,  C = NR + IC + CR + U + CU + TR.
struct Tally {
  std::size_t entities = 0;        // E
  std::size_t computed_sets = 0;   // CS
  std::size_t relationships = 0;  // R
  std::size_t roles = 0;          // RA
  std::size_t functions = 0;      // SF
  std::size_t ellipses = 0;       // EN
  std::size_t nonrelational = 0;  // NR
  std::size_t inclusions = 0;     // IC
  std::size_t compulsory = 0;     // CR
  std::size_t unique = 0;         // U
  std::size_t concatenated = 0;   // CU
  std::size_t tuple = 0;          // TR

  std::size_t sets() const { return entities + computed_sets + relationships; }
  std::size_t mappings() const { return roles + functions + ellipses; }
  std::size_t restrictions() const {
    return nonrelational + inclusions + compulsory + unique + concatenated + tuple;
  }
  std::size_t total() const { return sets() + mappings() + restrictions(); }

  friend bool operator==(const Tally&, const Tally&) = default;
};

/// "S=8 (E=5 CS=0 R=3) A=18 (...) C=31 (...) total=57"
std::string to_string(const Tally& tally);

Tally tally_steps(const std::vector<Step>& steps);

/// How compulsory restrictions are counted: one per listed mapping (default)
/// or one per restriction.
enum class CompulsoryCounting { PerMapping, PerRestriction };

std::string_view to_string(CompulsoryCounting counting);
std::optional<CompulsoryCounting> compulsory_counting_from_string(std::string_view text);

inline constexpr std::uint64_t kDefaultDbmsMaxCardinality = 1'000'000'000;

struct TranslationOptions {
  std::uint64_t dbms_max_cardinality = kDefaultDbmsMaxCardinality;
  bool interactive = false;
  Answers answers;
  Prompter prompter;  // consulted only when interactive
  CompulsoryCounting compulsory_counting = CompulsoryCounting::PerMapping;
};

struct TranslationReport {
  CompulsoryCounting compulsory_counting = CompulsoryCounting::PerMapping;
  std::vector<Step> steps;
  Tally tally;
  std::vector<Diagnostic> diagnostics;
  std::vector<Question> questions;
  std::vector<EnrichmentAction> actions;

  friend bool operator==(const TranslationReport&, const TranslationReport&) = default;
};

/// One line per counting convention, printed in report headers.
std::vector<std::string> counting_conventions(CompulsoryCounting counting);

struct TranslationResult {
  std::optional<EmdmScheme> scheme;  // withheld when any error was diagnosed
  TranslationReport report;
  ERModel effective_model;           // the input after rules (i)-(iv)
};

/// Bottom-up order over every set of a model: referenced sets before the
/// sets referencing them (through roles, structural functions and
/// inclusions), ties broken by declaration order. Reference cycles degrade
/// to declaration order within the cycle, with a warning.
struct SetOrder {
  std::vector<std::string> names;
  std::vector<Diagnostic> warnings;
};

SetOrder bottom_up_order(const ERModel& model);

/// Entity and computed sets of `diagram`, in `order`.
std::vector<const ObjectSet*> order_rectangles(const Diagram& diagram, const SetOrder& order);
/// Relationship sets of `diagram`, in `order`.
std::vector<const ObjectSet*> order_diamonds(const Diagram& diagram, const SetOrder& order);

std::vector<const ObjectSet*> order_rectangles(const Diagram& diagram);
std::vector<const ObjectSet*> order_diamonds(const Diagram& diagram);

/// Smallest n >= 1 with 10^n >= max_cardinality.
unsigned surrogate_digits(std::uint64_t max_cardinality);

/// The translation proper, one object set at a time. Every model element it
/// consumes is logged as exactly one Step. The model must be valid and must
/// outlive the translator.
class Translator {
 public:
  Translator(const ERModel& model, CompulsoryCounting counting, QuestionSession& session);

  /// Adds an entity or relationship set with its identifier and inclusions,
  /// then completes it (entities only; relationships complete after their
  /// roles). A set already in the scheme is left untouched.
  void add_set(const ObjectSet& set);
  void add_computed_set(const ObjectSet& set);
  void add_relationship(const ObjectSet& set);
  /// Functions, attributes, compulsory, uniqueness and tuple restrictions.
  void complete_scheme(const ObjectSet& set);
  void add_nonrelational(const Restriction& restriction);

  /// All diagrams, then the trailing nonrelational restrictions.
  void run();

  const EmdmScheme& scheme() const { return scheme_; }
  EmdmScheme& scheme() { return scheme_; }
  const std::vector<Step>& steps() const { return steps_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  void step(StepKind kind, std::string source, std::string produced);
  void provenance(std::string element, std::string source, ProvenanceKind kind);
  void diagnose(Severity severity, std::string code, std::string element, std::string message);
  void add_inclusions(const ObjectSet& set);
  void add_tuple_constraint(std::string set, std::string label, Formula formula);
  std::vector<const Restriction*> restrictions_on(std::string_view set) const;

  const ERModel& model_;
  CompulsoryCounting counting_;
  QuestionSession& session_;
  EmdmScheme scheme_;
  std::vector<Step> steps_;
  std::vector<Diagnostic> diagnostics_;
  std::map<std::string, std::vector<const Restriction*>, std::less<>> by_target_;
};

/// Validation, rules (i)-(iv), the translation, rules (v)-(ix), and a
/// final soundness check.
TranslationResult translate(const ERModel& model, const TranslationOptions& options = {});

}  // namespace erc
