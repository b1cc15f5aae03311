#include "erc/emdm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace erc {

std::string_view to_string(SchemeSetKind kind) {
  switch (kind) {
    case SchemeSetKind::EntityDerived: return "entity";
    case SchemeSetKind::RelationshipDerived: return "relationship";
    case SchemeSetKind::Computed: return "computed";
  }
  return "entity";
}

std::string_view to_string(MappingFlavor flavor) {
  switch (flavor) {
    case MappingFlavor::Attribute: return "attribute";
    case MappingFlavor::Role: return "role";
    case MappingFlavor::StructuralFunction: return "structural-function";
    case MappingFlavor::ObjectIdentifier: return "object-identifier";
    case MappingFlavor::EnrichmentGenerated: return "enrichment-generated";
  }
  return "attribute";
}

std::optional<SchemeSetKind> scheme_set_kind_from_string(std::string_view text) {
  for (auto k : {SchemeSetKind::EntityDerived, SchemeSetKind::RelationshipDerived, SchemeSetKind::Computed})
    if (to_string(k) == text)
      return k;
  return std::nullopt;
}

std::optional<MappingFlavor> mapping_flavor_from_string(std::string_view text) {
  for (auto f : {MappingFlavor::Attribute, MappingFlavor::Role, MappingFlavor::StructuralFunction,
                 MappingFlavor::ObjectIdentifier, MappingFlavor::EnrichmentGenerated})
    if (to_string(f) == text)
      return f;
  return std::nullopt;
}

std::string_view to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::Translated: return "translated";
    case ProvenanceKind::Absorbed: return "absorbed";
    case ProvenanceKind::Generated: return "generated";
    case ProvenanceKind::Consumed: return "consumed";
  }
  return "translated";
}

std::optional<ProvenanceKind> provenance_kind_from_string(std::string_view text) {
  for (auto k : {ProvenanceKind::Translated, ProvenanceKind::Absorbed, ProvenanceKind::Generated,
                 ProvenanceKind::Consumed})
    if (to_string(k) == text)
      return k;
  return std::nullopt;
}

const Mapping* SchemeSet::find_mapping(std::string_view n) const {
  auto it = std::find_if(mappings.begin(), mappings.end(), [&](const Mapping& m) { return m.name == n; });
  return it == mappings.end() ? nullptr : &*it;
}

Mapping* SchemeSet::find_mapping(std::string_view n) {
  auto it = std::find_if(mappings.begin(), mappings.end(), [&](const Mapping& m) { return m.name == n; });
  return it == mappings.end() ? nullptr : &*it;
}

const Key* SchemeSet::find_key(std::string_view label) const {
  auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.label == label; });
  return it == keys.end() ? nullptr : &*it;
}

std::vector<std::string> SchemeSet::roles() const {
  std::vector<std::string> out;
  for (const auto& m : mappings)
    if (m.flavor == MappingFlavor::Role)
      out.push_back(m.name);
  return out;
}

std::vector<std::pair<std::string, std::string>> SchemeSet::role_signature() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& m : mappings)
    if (m.flavor == MappingFlavor::Role)
      out.emplace_back(m.name, m.target_set);
  return out;
}

const SchemeSet* EmdmScheme::find_set(std::string_view name) const {
  auto it = std::find_if(sets.begin(), sets.end(), [&](const SchemeSet& s) { return s.name == name; });
  return it == sets.end() ? nullptr : &*it;
}

SchemeSet* EmdmScheme::find_set(std::string_view name) {
  auto it = std::find_if(sets.begin(), sets.end(), [&](const SchemeSet& s) { return s.name == name; });
  return it == sets.end() ? nullptr : &*it;
}

Key structural_key(const SchemeSet& set) {
  Key key;
  key.mappings = set.roles();
  if (key.mappings.empty())
    throw std::invalid_argument("set '" + set.name + "' has no roles");
  key.implicit = set.kind == SchemeSetKind::RelationshipDerived;
  return key;
}

bool is_implicit_key(const Key& key, const SchemeSet& set) {
  if (set.kind != SchemeSetKind::RelationshipDerived)
    return false;
  const auto roles = set.roles();
  if (roles.empty() || roles.size() != key.mappings.size())
    return false;
  const std::set<std::string> a(roles.begin(), roles.end());
  const std::set<std::string> b(key.mappings.begin(), key.mappings.end());
  return a == b && b.size() == key.mappings.size();
}

std::string format_key(const Key& key, Glyphs glyphs) {
  std::string out = key.label + ": ";
  const char* sep = glyphs == Glyphs::Unicode ? " • " : " . ";
  for (std::size_t i = 0; i < key.mappings.size(); ++i) {
    if (i)
      out += sep;
    out += key.mappings[i];
  }
  return out;
}

namespace ids {

std::string set(std::string_view name) { return "set:" + std::string(name); }
std::string attribute(std::string_view s, std::string_view n) {
  return "attribute:" + std::string(s) + "." + std::string(n);
}
std::string role(std::string_view s, std::string_view n) { return "role:" + std::string(s) + "." + std::string(n); }
std::string function(std::string_view s, std::string_view n) {
  return "function:" + std::string(s) + "." + std::string(n);
}
std::string header_inclusion(std::string_view subset, std::string_view superset) {
  return "inclusion:" + std::string(subset) + "<=" + std::string(superset);
}
std::string restriction(std::string_view label) { return "restriction:" + std::string(label); }
std::string restriction_member(std::string_view label, std::string_view m) {
  return "restriction:" + std::string(label) + "/" + std::string(m);
}
std::string mapping(std::string_view s, std::string_view n) {
  return "mapping:" + std::string(s) + "." + std::string(n);
}
std::string key(std::string_view s, std::string_view label) {
  return "key:" + std::string(s) + "." + std::string(label);
}
std::string constraint(const Constraint& c) {
  if (c.label.empty())
    if (const auto* inc = std::get_if<InclusionConstraint>(&c.body))
      return header_inclusion(inc->subset, inc->superset);
  return "constraint:" + c.label;
}

}  // namespace ids

namespace {

std::optional<unsigned long> label_number(std::string_view label) {
  if (label.size() < 2 || label[0] != 'R')
    return std::nullopt;
  unsigned long n = 0;
  for (char c : label.substr(1)) {
    if (c < '0' || c > '9' || n > 100000000UL)
      return std::nullopt;
    n = n * 10 + static_cast<unsigned long>(c - '0');
  }
  return n;
}

class SchemeChecker {
 public:
  explicit SchemeChecker(const EmdmScheme& scheme) : scheme_(scheme) {}

  std::vector<Diagnostic> run() {
    std::set<std::string> set_names;
    for (const auto& set : scheme_.sets) {
      if (set.name.empty())
        error("empty-name", "", "set without a name");
      else if (!set_names.insert(set.name).second)
        error("duplicate-set", ids::set(set.name), "set declared twice");
    }
    for (const auto& set : scheme_.sets)
      check_set(set);
    for (const auto& c : scheme_.constraints)
      check_constraint(c);
    check_provenance();
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string element, std::string message) {
    out_.push_back({Severity::Error, std::move(code), std::move(message), std::move(element)});
  }

  void claim_label(const std::string& label, const std::string& element) {
    if (label.empty())
      return;
    if (auto [it, fresh] = labels_.emplace(label, element); !fresh)
      error("duplicate-label", element, "label '" + label + "' already used by " + it->second);
  }

  void check_set(const SchemeSet& set) {
    const std::string sid = ids::set(set.name);
    if (set.kind == SchemeSetKind::Computed) {
      if (set.definition.empty())
        error("missing-definition", sid, "computed set without a definition");
    } else if (!set.definition.empty()) {
      error("unexpected-definition", sid, "only computed sets carry a definition");
    }
    if (set.identifier) {
      const Mapping& x = *set.identifier;
      const bool ok = x.name == "x" && x.flavor == MappingFlavor::ObjectIdentifier && x.total && x.one_to_one &&
                      x.value_range && x.value_range->form == Range::Form::Nat && x.target_set.empty();
      if (!ok)
        error("invalid-identifier", sid, "identifier must be 'x <-> NAT(n), total'");
    } else if (set.kind != SchemeSetKind::Computed) {
      error("missing-identifier", sid, "set has no object identifier");
    }

    std::set<std::string> names;
    bool past_roles = false;
    std::size_t role_count = 0;
    for (const auto& m : set.mappings) {
      const std::string mid = ids::mapping(set.name, m.name);
      if (m.name.empty() || m.name == "x")
        error("reserved-mapping-name", mid, "mapping name is empty or reserved");
      if (!names.insert(m.name).second)
        error("duplicate-mapping", mid, "mapping declared twice");
      if (m.source != set.name)
        error("mapping-source-mismatch", mid, "mapping source is '" + m.source + "'");
      if (m.flavor == MappingFlavor::ObjectIdentifier)
        error("misplaced-identifier", mid, "object identifiers are kept apart from mappings");
      if (m.flavor == MappingFlavor::Role) {
        ++role_count;
        if (set.kind != SchemeSetKind::RelationshipDerived)
          error("misplaced-role", mid, "roles belong to relationship-derived sets");
        if (past_roles)
          error("roles-not-first", mid, "roles must precede other mappings");
        if (m.target_set.empty())
          error("missing-codomain", mid, "role without a target set");
      } else {
        past_roles = true;
      }
      if (m.computed) {
        if (m.definition.empty())
          error("missing-definition", mid, "computed mapping without a definition");
        if (m.value_range || m.maps_to_set())
          if (m.flavor != MappingFlavor::StructuralFunction || m.value_range)
            error("computed-with-codomain", mid, "computed attributes take no range");
      } else {
        if (!m.definition.empty())
          error("unexpected-definition", mid, "only computed mappings carry a definition");
        if (m.value_range.has_value() == m.maps_to_set())
          error(m.value_range ? "ambiguous-codomain" : "missing-codomain", mid,
                "mapping needs exactly one of a value range or a target set");
      }
      if (m.maps_to_set() && !scheme_.find_set(m.target_set))
        error("unresolved-codomain", mid, "target set '" + m.target_set + "' does not exist");
      if (m.value_range && m.value_range->form == Range::Form::Interval &&
          m.value_range->lo.kind == m.value_range->hi.kind && m.value_range->lo.kind != Bound::Kind::Function &&
          m.value_range->lo.value > m.value_range->hi.value)
        error("inverted-range", mid, "lower bound exceeds upper bound");
    }
    if (set.kind == SchemeSetKind::RelationshipDerived && role_count == 0)
      error("relationship-without-roles", sid, "relationship-derived set has no roles");

    std::set<std::set<std::string>> key_sets;
    for (const auto& k : set.keys) {
      const std::string kid = ids::key(set.name, k.label);
      if (k.label.empty())
        error("empty-label", kid, "key without a label");
      claim_label(k.label, kid);
      if (k.mappings.empty())
        error("empty-key", kid, "key spans no mappings");
      std::set<std::string> seen;
      for (const auto& name : k.mappings) {
        if (!seen.insert(name).second)
          error("duplicate-key-mapping", kid, "mapping '" + name + "' repeated");
        if (!set.find_mapping(name))
          error("unknown-key-mapping", kid, "set has no mapping '" + name + "'");
      }
      if (k.implicit != is_implicit_key(k, set))
        error("implicit-flag-mismatch", kid, "implicit flag disagrees with the set's roles");
      if (k.mappings.size() == 1)
        error("short-key", kid, "a one-mapping key belongs on the mapping as one-to-one");
      if (!seen.empty() && !key_sets.insert(seen).second)
        error("duplicate-key-mapping-set", kid, "another key spans the same mappings");
    }
  }

  struct Type {
    const SchemeSet* set = nullptr;  // null for values
    bool known = true;
  };

  Type type_of(const Term& t, const std::map<std::string, std::string>& scope, const std::string& where) {
    switch (t.kind()) {
      case Term::Kind::Integer:
      case Term::Kind::Text:
        return {};
      case Term::Kind::Variable: {
        auto it = scope.find(t.name());
        if (it == scope.end()) {
          error("unbound-variable", where, "variable '" + t.name() + "' is not bound");
          return {nullptr, false};
        }
        return {scheme_.find_set(it->second), true};
      }
      case Term::Kind::Apply: {
        const Type arg = type_of(t.argument(), scope, where);
        if (!arg.known)
          return arg;
        if (!arg.set) {
          error("formula-type", where, "mapping '" + t.name() + "' applied to a value");
          return {nullptr, false};
        }
        if (t.name() == "x" && arg.set->identifier)
          return {};
        const Mapping* m = arg.set->find_mapping(t.name());
        if (!m) {
          error("unknown-mapping", where, "set '" + arg.set->name + "' has no mapping '" + t.name() + "'");
          return {nullptr, false};
        }
        return {m->maps_to_set() ? scheme_.find_set(m->target_set) : nullptr, true};
      }
    }
    return {nullptr, false};
  }

  void check_formula(const Formula& f, std::map<std::string, std::string>& scope, const std::string& where) {
    switch (f.kind()) {
      case Formula::Kind::Forall: {
        if (!scheme_.find_set(f.domain()))
          error("unresolved-domain", where, "quantifier ranges over unknown set '" + f.domain() + "'");
        if (scope.contains(f.variable()))
          error("rebound-variable", where, "variable '" + f.variable() + "' bound twice");
        auto saved = scope;
        scope[f.variable()] = f.domain();
        check_formula(f.body(), scope, where);
        scope = std::move(saved);
        return;
      }
      case Formula::Kind::Not:
        check_formula(f.operand(), scope, where);
        return;
      case Formula::Kind::Compare:
        type_of(f.lhs(), scope, where);
        type_of(f.rhs(), scope, where);
        return;
      default:
        check_formula(f.left(), scope, where);
        check_formula(f.right(), scope, where);
        return;
    }
  }

  void check_constraint(const Constraint& c) {
    const std::string cid = ids::constraint(c);
    claim_label(c.label, cid);
    if (const auto* inc = std::get_if<InclusionConstraint>(&c.body)) {
      if (!scheme_.find_set(inc->subset) || !scheme_.find_set(inc->superset))
        error("unresolved-inclusion", cid, "inclusion names a missing set");
      if (inc->subset == inc->superset)
        error("self-inclusion", cid, "set included in itself");
      if (c.label.empty()) {
        if (!header_inclusions_.insert({inc->subset, inc->superset}).second)
          error("duplicate-inclusion", cid, "inclusion stated twice");
      }
    } else if (const auto* tc = std::get_if<TupleConstraint>(&c.body)) {
      if (c.label.empty())
        error("empty-label", cid, "tuple constraint without a label");
      if (!scheme_.find_set(tc->set))
        error("unresolved-tuple-set", cid, "tuple constraint on unknown set '" + tc->set + "'");
      const auto vars = quantified_variables(tc->formula);
      if (vars.size() != 1 || vars.front().second != tc->set)
        error("tuple-arity", cid, "tuple constraint must quantify exactly one variable over '" + tc->set + "'");
      std::map<std::string, std::string> scope;
      check_formula(tc->formula, scope, cid);
    } else {
      const auto& nr = std::get<NonrelationalConstraint>(c.body);
      if (c.label.empty())
        error("empty-label", cid, "constraint without a label");
      if (nr.formula) {
        std::map<std::string, std::string> scope;
        check_formula(*nr.formula, scope, cid);
      } else if (nr.informal.empty()) {
        error("empty-constraint", cid, "constraint has neither formula nor text");
      }
    }
  }

  void check_provenance() {
    std::set<std::string> elements;
    std::vector<std::string> required;
    for (const auto& set : scheme_.sets) {
      required.push_back(ids::set(set.name));
      if (set.identifier)
        elements.insert(ids::mapping(set.name, "x"));
      for (const auto& m : set.mappings)
        required.push_back(ids::mapping(set.name, m.name));
      for (const auto& k : set.keys)
        required.push_back(ids::key(set.name, k.label));
    }
    for (const auto& c : scheme_.constraints)
      required.push_back(ids::constraint(c));
    elements.insert(required.begin(), required.end());

    std::set<std::string> primary;
    for (const auto& p : scheme_.provenance) {
      if (!elements.contains(p.element))
        error("dangling-provenance", p.element, "provenance names no scheme element (source " + p.source + ")");
      if (p.source.empty())
        error("dangling-provenance", p.element, "provenance without a source");
      if (p.kind != ProvenanceKind::Consumed)
        primary.insert(p.element);
    }
    for (const auto& id : required)
      if (!primary.contains(id))
        error("missing-provenance", id, "element has no originating model element or rule");
  }

  const EmdmScheme& scheme_;
  std::vector<Diagnostic> out_;
  std::map<std::string, std::string> labels_;
  std::set<std::pair<std::string, std::string>> header_inclusions_;
};

}  // namespace

std::vector<Diagnostic> check_scheme(const EmdmScheme& scheme) { return SchemeChecker(scheme).run(); }

std::string next_label(const EmdmScheme& scheme) {
  unsigned long top = 0;
  auto see = [&](std::string_view label) {
    if (auto n = label_number(label))
      top = std::max(top, *n);
  };
  for (const auto& set : scheme.sets) {
    for (const auto& k : set.keys)
      see(k.label);
    for (const auto& m : set.mappings) {
      see(m.total_label);
      see(m.unique_label);
    }
  }
  for (const auto& c : scheme.constraints)
    see(c.label);
  constexpr std::string_view prefix = "restriction:";
  for (const auto& p : scheme.provenance) {
    std::string_view src = p.source;
    if (!src.starts_with(prefix))
      continue;
    src.remove_prefix(prefix.size());
    see(src.substr(0, src.find('/')));
  }
  std::string digits = std::to_string(top + 1);
  if (digits.size() < 2)
    digits.insert(0, 2 - digits.size(), '0');
  return "R" + digits;
}

}  // namespace erc
