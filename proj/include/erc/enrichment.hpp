#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erc/answers.hpp"
#include "erc/diagnostic.hpp"
#include "erc/emdm.hpp"
#include "erc/ermodel.hpp"

namespace erc {

// The nine enrichment rules. The first four repair the input model before
// translation; the rest complete the translated scheme.
enum class EnrichmentRule {
  MissingCardinality = 1,  // (i)
  ExcessCardinality,       // (ii)
  MissingRange,            // (iii)
  MissingDefinition,       // (iv)
  Totality,                // (v)
  CompulsoryMapping,       // (vi)
  StructuralKey,           // (vii)
  BinaryCollapse,          // (viii)
  UniqueMapping,           // (ix)
};

/// "i" .. "ix"
std::string_view numeral(EnrichmentRule rule);
std::optional<EnrichmentRule> rule_from_numeral(std::string_view text);

/// One rule firing. Scheme-level actions carry enough payload for
/// apply_action to redo them on the pre-enrichment scheme.
struct EnrichmentAction {
  EnrichmentRule rule = EnrichmentRule::Totality;
  std::string target;  // element id the rule fired on
  std::string description;
  std::vector<std::string> produced;  // ids of created or changed elements

  std::string set;
  std::string mapping;
  std::string label;
  std::string host;      // rule (viii): set receiving the function
  std::string codomain;  // rule (viii): its codomain
  std::vector<std::string> members;
  bool one_to_one = false;

  friend bool operator==(const EnrichmentAction&, const EnrichmentAction&) = default;
};

struct InputDefaults {
  ERModel model;
  std::vector<Diagnostic> diagnostics;
  std::vector<EnrichmentAction> actions;
};

/// Rules (i)-(iv) on a validated model.
InputDefaults apply_input_defaults(const ERModel& model, std::uint64_t dbms_max_cardinality,
                                   QuestionSession& session);

struct RuleOutcome {
  EmdmScheme scheme;
  std::vector<EnrichmentAction> actions;
  std::vector<Diagnostic> diagnostics;
};

RuleOutcome ensure_totality(const EmdmScheme& scheme);                 // (v)
RuleOutcome ensure_compulsory(const EmdmScheme& scheme);               // (vi)
RuleOutcome ensure_structural_key(const EmdmScheme& scheme);           // (vii)
RuleOutcome collapse_binary_relationships(const EmdmScheme& scheme,    // (viii)
                                          QuestionSession& session);
RuleOutcome ensure_uniqueness(const EmdmScheme& scheme);               // (ix)

/// Post-translation pass in the order (v), (viii), (vii), (vi), (ix).
RuleOutcome enrich(const EmdmScheme& scheme, QuestionSession& session);

/// Re-applies a recorded scheme-level action. Throws std::invalid_argument
/// for model-level rules or when the action does not fit the scheme.
void apply_action(EmdmScheme& scheme, const EnrichmentAction& action);

EmdmScheme replay(EmdmScheme scheme, const std::vector<EnrichmentAction>& actions);

}  // namespace erc
