#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "erc/diagnostic.hpp"
#include "erc/ermodel.hpp"
#include "erc/formula.hpp"

namespace erc {

enum class SchemeSetKind { EntityDerived, RelationshipDerived, Computed };

enum class MappingFlavor {
  Attribute,
  Role,
  StructuralFunction,
  ObjectIdentifier,
  EnrichmentGenerated,
};

std::string_view to_string(SchemeSetKind kind);
std::string_view to_string(MappingFlavor flavor);
std::optional<SchemeSetKind> scheme_set_kind_from_string(std::string_view text);
std::optional<MappingFlavor> mapping_flavor_from_string(std::string_view text);

/// A mapping's codomain is a value range, an object set (roles and
/// structural functions), or absent for computed mappings.
struct Mapping {
  std::string name;
  std::string source;
  std::optional<Range> value_range;
  std::string target_set;
  MappingFlavor flavor = MappingFlavor::Attribute;
  bool total = false;
  bool one_to_one = false;
  bool computed = false;
  std::string definition;
  std::string total_label;   // restriction that made it total
  std::string unique_label;  // restriction that made it one-to-one

  bool maps_to_set() const { return !target_set.empty(); }

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

/// Multi-mapping uniqueness. Single uniqueness is Mapping::one_to_one.
struct Key {
  std::string label;
  std::vector<std::string> mappings;
  bool implicit = false;   // spans exactly the roles of a relationship
  bool generated = false;  // added by enrichment
  bool review = false;     // flagged for human review

  friend bool operator==(const Key&, const Key&) = default;
};

struct SchemeSet {
  std::string name;
  SchemeSetKind kind = SchemeSetKind::EntityDerived;
  std::optional<Mapping> identifier;  // absent only for computed sets
  std::vector<Mapping> mappings;      // roles first for relationship-derived sets
  std::vector<Key> keys;
  std::string definition;             // computed sets

  const Mapping* find_mapping(std::string_view name) const;
  Mapping* find_mapping(std::string_view name);
  const Key* find_key(std::string_view label) const;
  /// Role names in declaration order.
  std::vector<std::string> roles() const;
  /// (role, target set) pairs shown in a relationship header.
  std::vector<std::pair<std::string, std::string>> role_signature() const;

  friend bool operator==(const SchemeSet&, const SchemeSet&) = default;
};

struct InclusionConstraint {
  std::string subset;
  std::string superset;
  friend bool operator==(const InclusionConstraint&, const InclusionConstraint&) = default;
};

/// (forall x in set) t(x)
struct TupleConstraint {
  std::string set;
  Formula formula;
  friend bool operator==(const TupleConstraint&, const TupleConstraint&) = default;
};

/// A multi-variable business rule; unformalized ones carry only text.
struct NonrelationalConstraint {
  std::optional<Formula> formula;
  std::string informal;
  friend bool operator==(const NonrelationalConstraint&, const NonrelationalConstraint&) = default;
};

struct Constraint {
  std::string label;  // empty for inclusions declared in a set header
  std::variant<InclusionConstraint, TupleConstraint, NonrelationalConstraint> body;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

enum class ProvenanceKind {
  Translated,  // the scheme element is the image of the source element
  Absorbed,    // as Translated, but the element is implied by notation
  Generated,   // added by enrichment
  Consumed,    // the source only contributed a flag, range or digit count
};

std::string_view to_string(ProvenanceKind kind);
std::optional<ProvenanceKind> provenance_kind_from_string(std::string_view text);

struct ProvenanceEntry {
  std::string element;  // scheme element id
  std::string source;   // model element id, or "rule:<n>" for enrichment
  ProvenanceKind kind = ProvenanceKind::Translated;

  friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

struct EmdmScheme {
  std::vector<SchemeSet> sets;  // translation order
  std::vector<Constraint> constraints;
  std::vector<ProvenanceEntry> provenance;

  const SchemeSet* find_set(std::string_view name) const;
  SchemeSet* find_set(std::string_view name);
  bool empty() const { return sets.empty() && constraints.empty(); }

  friend bool operator==(const EmdmScheme&, const EmdmScheme&) = default;
};

/// Key over every role of a relationship-derived set, in role order.
/// Throws std::invalid_argument if the set has no roles.
Key structural_key(const SchemeSet& set);

/// True iff `set` is relationship-derived and `key` covers exactly its roles.
bool is_implicit_key(const Key& key, const SchemeSet& set);

/// "R33: Room . Weekday . StartH" (ASCII) or with • (Unicode).
std::string format_key(const Key& key, Glyphs glyphs = Glyphs::Ascii);

/// Every set, mapping, key and constraint invariant, plus resolution of
/// codomains and formula mappings. Empty iff the scheme is sound.
std::vector<Diagnostic> check_scheme(const EmdmScheme& scheme);

/// Next "Rnn" label after the numerically largest one mentioned by the
/// scheme (keys, constraints, mapping flags and provenance sources).
std::string next_label(const EmdmScheme& scheme);

namespace ids {

std::string set(std::string_view name);
std::string attribute(std::string_view set, std::string_view name);
std::string role(std::string_view set, std::string_view name);
std::string function(std::string_view set, std::string_view name);
std::string header_inclusion(std::string_view subset, std::string_view superset);
std::string restriction(std::string_view label);
std::string restriction_member(std::string_view label, std::string_view mapping);

std::string mapping(std::string_view set, std::string_view name);
std::string key(std::string_view set, std::string_view label);
std::string constraint(const Constraint& constraint);

}  // namespace ids

}  // namespace erc
