#include "erc/enrichment.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace erc {

namespace {

constexpr std::array<std::string_view, 9> kNumerals = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"};

std::string rule_source(EnrichmentRule rule) { return "rule:" + std::string(numeral(rule)); }

Diagnostic note(Severity severity, std::string code, std::string element, std::string message) {
  return {severity, std::move(code), std::move(message), std::move(element)};
}

}  // namespace

std::string_view numeral(EnrichmentRule rule) { return kNumerals[static_cast<std::size_t>(rule) - 1]; }

std::optional<EnrichmentRule> rule_from_numeral(std::string_view text) {
  for (std::size_t i = 0; i < kNumerals.size(); ++i)
    if (kNumerals[i] == text)
      return static_cast<EnrichmentRule>(i + 1);
  return std::nullopt;
}

// Rules (i)-(iv) ---------------------------------------------------------------

namespace {

class InputRepair {
 public:
  InputRepair(const ERModel& model, std::uint64_t dbms_max, QuestionSession& session)
      : dbms_max_(dbms_max), session_(session) {
    out_.model = model;
  }

  InputDefaults run() {
    cardinalities();
    ranges();
    definitions();
    return std::move(out_);
  }

 private:
  ERModel& model() { return out_.model; }

  void fire(EnrichmentRule rule, std::string target, std::string description, std::string set,
            std::string mapping = {}) {
    EnrichmentAction a;
    a.rule = rule;
    a.target = target;
    a.description = std::move(description);
    a.produced = {target};
    a.set = std::move(set);
    a.mapping = std::move(mapping);
    out_.actions.push_back(std::move(a));
  }

  void diagnose(Severity severity, std::string code, std::string element, std::string message) {
    out_.diagnostics.push_back(note(severity, std::move(code), std::move(element), std::move(message)));
  }

  Restriction* card_restriction(std::string_view set) {
    for (auto& r : model().restrictions)
      if (r.target == set && std::holds_alternative<CardinalityBody>(r.body))
        return &r;
    return nullptr;
  }

  const Restriction* range_restriction(std::string_view set, std::string_view attribute) {
    for (const auto& r : model().restrictions)
      if (const auto* b = std::get_if<RangeBody>(&r.body); b && r.target == set && b->attribute == attribute)
        return &r;
    return nullptr;
  }

  void cardinalities() {
    for (auto& d : model().diagrams) {
      for (auto& s : d.sets) {
        if (s.kind == SetKind::Computed)
          continue;
        const std::string sid = ids::set(s.name);
        Restriction* r = card_restriction(s.name);
        std::uint64_t* max = s.max_cardinality ? &*s.max_cardinality
                             : r                ? &std::get<CardinalityBody>(r->body).max
                                                : nullptr;
        if (!max) {
          s.max_cardinality = dbms_max_;
          diagnose(Severity::Info, "missing-cardinality", sid,
                   "no maximum cardinality; assuming the DBMS maximum " + std::to_string(dbms_max_));
          fire(EnrichmentRule::MissingCardinality, sid, "cardinality set to " + std::to_string(dbms_max_), s.name);
        } else if (*max > dbms_max_) {
          diagnose(Severity::Warning, "excess-cardinality", sid,
                   "maximum cardinality " + std::to_string(*max) + " exceeds the DBMS maximum " +
                       std::to_string(dbms_max_) + "; clamped");
          *max = dbms_max_;
          fire(EnrichmentRule::ExcessCardinality, sid, "cardinality clamped to " + std::to_string(dbms_max_), s.name);
        }
      }
    }
  }

  void ranges() {
    for (auto& d : model().diagrams) {
      for (auto& s : d.sets) {
        for (auto& a : s.attributes) {
          if (a.computed || a.range || range_restriction(s.name, a.name))
            continue;
          a.range = Range::ascii(255);
          const std::string aid = ids::attribute(s.name, a.name);
          diagnose(Severity::Info, "missing-range", aid, "no range; assuming ASCII(255)");
          fire(EnrichmentRule::MissingRange, aid, "range set to ASCII(255)", s.name, a.name);
        }
      }
    }
  }

  std::optional<std::string> ask(const std::string& key, const std::string& what) {
    return session_.ask(QuestionKind::ComputedDefinition, key, "Definition of computed " + what + " " + key + ":");
  }

  // Formulas mentioning a set as domain or a mapping by name.
  bool formula_mentions(std::string_view set, std::string_view mapping) const {
    for (const auto& r : out_.model.restrictions) {
      const auto* other = std::get_if<OtherBody>(&r.body);
      if (!other || !other->formal)
        continue;
      if (!set.empty()) {
        for (const auto& [var, domain] : quantified_variables(*other->formal))
          if (domain == set)
            return true;
      }
      if (!mapping.empty()) {
        const auto applied = applied_mappings(*other->formal);
        if (std::find(applied.begin(), applied.end(), mapping) != applied.end())
          return true;
      }
    }
    return false;
  }

  void definitions() {
    std::vector<std::string> dropped_sets;
    for (auto& d : model().diagrams) {
      for (auto& s : d.sets) {
        if (s.kind == SetKind::Computed && s.definition.empty()) {
          const std::string sid = ids::set(s.name);
          if (auto def = ask(s.name, "set")) {
            s.definition = *def;
            diagnose(Severity::Info, "definition-supplied", sid, "definition taken from the answers");
            fire(EnrichmentRule::MissingDefinition, sid, "definition supplied", s.name);
          } else {
            dropped_sets.push_back(s.name);
            continue;  // its members go with it
          }
        }
        drop_members(s);
      }
    }
    for (const auto& name : dropped_sets)
      drop_set(name);
  }

  void drop_members(ObjectSet& s) {
    std::vector<std::string> dropped;
    for (auto it = s.attributes.begin(); it != s.attributes.end();) {
      if (!it->computed || !it->definition.empty()) {
        ++it;
        continue;
      }
      const std::string key = s.name + "." + it->name;
      const std::string aid = ids::attribute(s.name, it->name);
      if (auto def = ask(key, "attribute")) {
        it->definition = *def;
        diagnose(Severity::Info, "definition-supplied", aid, "definition taken from the answers");
        fire(EnrichmentRule::MissingDefinition, aid, "definition supplied", s.name, it->name);
        ++it;
        continue;
      }
      diagnose(Severity::Warning, "definition-missing", aid, "computed attribute has no definition; ignored");
      fire(EnrichmentRule::MissingDefinition, aid, "computed attribute dropped", s.name, it->name);
      dropped.push_back(it->name);
      it = s.attributes.erase(it);
    }
    for (auto it = s.functions.begin(); it != s.functions.end();) {
      if (!it->computed || !it->definition.empty()) {
        ++it;
        continue;
      }
      const std::string key = s.name + "." + it->name;
      const std::string fid = ids::function(s.name, it->name);
      if (auto def = ask(key, "function")) {
        it->definition = *def;
        diagnose(Severity::Info, "definition-supplied", fid, "definition taken from the answers");
        fire(EnrichmentRule::MissingDefinition, fid, "definition supplied", s.name, it->name);
        ++it;
        continue;
      }
      diagnose(Severity::Warning, "definition-missing", fid, "computed function has no definition; ignored");
      fire(EnrichmentRule::MissingDefinition, fid, "computed function dropped", s.name, it->name);
      dropped.push_back(it->name);
      it = s.functions.erase(it);
    }
    for (const auto& name : dropped)
      forget_mapping(s.name, name);
  }

  // Restrictions naming a dropped mapping lose it; formulas cannot.
  void forget_mapping(const std::string& set, const std::string& mapping) {
    if (formula_mentions({}, mapping))
      diagnose(Severity::Error, "dropped-element-referenced", ids::mapping(set, mapping),
               "a constraint formula applies '" + mapping + "', which was dropped");
    auto& rs = model().restrictions;
    for (auto it = rs.begin(); it != rs.end();) {
      bool remove = false;
      if (it->target == set) {
        if (auto* c = std::get_if<CompulsoryBody>(&it->body)) {
          auto pos = std::find(c->mappings.begin(), c->mappings.end(), mapping);
          if (pos != c->mappings.end()) {
            c->mappings.erase(pos);
            remove = c->mappings.empty();
            diagnose(Severity::Warning, "restriction-trimmed", ids::restriction(it->label),
                     "'" + mapping + "' removed with its computed mapping");
          }
        } else if (auto* u = std::get_if<UniquenessBody>(&it->body)) {
          remove = std::find(u->mappings.begin(), u->mappings.end(), mapping) != u->mappings.end();
        } else if (auto* rb = std::get_if<RangeBody>(&it->body)) {
          remove = rb->attribute == mapping;
        }
      }
      if (remove) {
        diagnose(Severity::Warning, "restriction-dropped", ids::restriction(it->label),
                 "restriction depends on dropped mapping '" + set + "." + mapping + "'");
        it = rs.erase(it);
      } else {
        ++it;
      }
    }
  }

  void drop_set(const std::string& name) {
    const std::string sid = ids::set(name);
    bool referenced = formula_mentions(name, {});
    for (const auto* s : model().sets()) {
      if (s->name == name)
        continue;
      for (const auto& r : s->roles)
        referenced |= r.target == name;
      for (const auto& f : s->functions)
        referenced |= f.target == name;
      for (const auto& sup : s->included_in)
        referenced |= sup == name;
    }
    for (const auto& r : model().restrictions)
      if (const auto* inc = std::get_if<InclusionBody>(&r.body); inc && inc->superset == name)
        referenced = true;
    if (referenced) {
      diagnose(Severity::Error, "dropped-element-referenced", sid,
               "computed set has no definition but other elements reference it");
      fire(EnrichmentRule::MissingDefinition, sid, "computed set cannot be dropped", name);
      return;
    }
    diagnose(Severity::Warning, "definition-missing", sid, "computed set has no definition; ignored");
    fire(EnrichmentRule::MissingDefinition, sid, "computed set dropped", name);
    for (auto& d : model().diagrams)
      std::erase_if(d.sets, [&](const ObjectSet& s) { return s.name == name; });
    auto& rs = model().restrictions;
    for (auto it = rs.begin(); it != rs.end();) {
      if (it->target == name) {
        diagnose(Severity::Warning, "restriction-dropped", ids::restriction(it->label),
                 "restriction on dropped set '" + name + "'");
        it = rs.erase(it);
      } else {
        ++it;
      }
    }
  }

  std::uint64_t dbms_max_;
  QuestionSession& session_;
  InputDefaults out_;
};

}  // namespace

InputDefaults apply_input_defaults(const ERModel& model, std::uint64_t dbms_max_cardinality,
                                   QuestionSession& session) {
  return InputRepair(model, dbms_max_cardinality, session).run();
}

// Rules (v)-(ix) ---------------------------------------------------------------

namespace {

std::string free_name(const SchemeSet& set, const std::string& base) {
  if (!set.find_mapping(base))
    return base;
  for (int n = 2;; ++n) {
    std::string candidate = base + std::to_string(n);
    if (!set.find_mapping(candidate))
      return candidate;
  }
}

bool fundamental(const SchemeSet& s) { return s.kind != SchemeSetKind::Computed; }

Mapping generated_mapping(const std::string& set, const std::string& name, bool one_to_one) {
  Mapping m;
  m.name = name;
  m.source = set;
  m.value_range = Range::ascii(255);
  m.flavor = MappingFlavor::EnrichmentGenerated;
  m.total = true;
  m.one_to_one = one_to_one;
  return m;
}

void add_generated_mapping(EmdmScheme& scheme, EnrichmentRule rule, const std::string& set,
                           const std::string& name) {
  SchemeSet* s = scheme.find_set(set);
  if (!s || s->find_mapping(name))
    throw std::invalid_argument("cannot add mapping '" + name + "' to '" + set + "'");
  s->mappings.push_back(generated_mapping(set, name, rule == EnrichmentRule::UniqueMapping));
  scheme.provenance.push_back({ids::mapping(set, name), rule_source(rule), ProvenanceKind::Generated});
}

void add_structural_key(EmdmScheme& scheme, const std::string& set, const std::string& label,
                        const std::vector<std::string>& members) {
  SchemeSet* s = scheme.find_set(set);
  if (s && members.size() == 1) {
    // A one-role key is single uniqueness, which lives on the mapping.
    Mapping* role = s->find_mapping(members.front());
    if (!role || role->flavor != MappingFlavor::Role)
      throw std::invalid_argument("no role '" + members.front() + "' in '" + set + "'");
    role->one_to_one = true;
    scheme.provenance.push_back({ids::mapping(set, role->name), rule_source(EnrichmentRule::StructuralKey),
                                 ProvenanceKind::Generated});
    return;
  }
  if (!s || s->find_key(label))
    throw std::invalid_argument("cannot add key '" + label + "' to '" + set + "'");
  Key k{label, members, false, true, true};
  k.implicit = is_implicit_key(k, *s);
  s->keys.push_back(std::move(k));
  scheme.provenance.push_back(
      {ids::key(set, label), rule_source(EnrichmentRule::StructuralKey), ProvenanceKind::Generated});
}

void collapse(EmdmScheme& scheme, const std::string& relationship, const std::string& host,
              const std::string& codomain, bool one_to_one) {
  auto it = std::find_if(scheme.sets.begin(), scheme.sets.end(),
                         [&](const SchemeSet& s) { return s.name == relationship; });
  SchemeSet* h = scheme.find_set(host);
  if (it == scheme.sets.end() || !h || h->name == relationship || h->find_mapping(relationship) ||
      !scheme.find_set(codomain))
    throw std::invalid_argument("cannot collapse '" + relationship + "' into '" + host + "'");
  Mapping m;
  m.name = relationship;
  m.source = host;
  m.target_set = codomain;
  m.flavor = MappingFlavor::StructuralFunction;
  m.one_to_one = one_to_one;
  h->mappings.push_back(std::move(m));
  scheme.sets.erase(it);

  const std::string produced = ids::mapping(host, relationship);
  const std::string set_prefix = ids::set(relationship);
  const std::string mapping_prefix = ids::mapping(relationship, "");
  const std::string key_prefix = ids::key(relationship, "");
  for (auto& p : scheme.provenance) {
    if (p.element == set_prefix || p.element.starts_with(mapping_prefix) || p.element.starts_with(key_prefix)) {
      p.element = produced;
      p.kind = ProvenanceKind::Consumed;
    }
  }
  scheme.provenance.push_back(
      {produced, rule_source(EnrichmentRule::BinaryCollapse), ProvenanceKind::Generated});
}

}  // namespace

RuleOutcome ensure_totality(const EmdmScheme& scheme) {
  RuleOutcome out{scheme, {}, {}};
  for (auto& s : out.scheme.sets) {
    auto fire = [&](Mapping& m, const char* what) {
      m.total = true;
      const std::string id = ids::mapping(s.name, m.name);
      EnrichmentAction a;
      a.rule = EnrichmentRule::Totality;
      a.target = id;
      a.description = std::string(what) + " made total";
      a.produced = {id};
      a.set = s.name;
      a.mapping = m.name;
      out.actions.push_back(std::move(a));
      out.diagnostics.push_back(note(Severity::Info, "totality-added", id, std::string(what) + " made total"));
    };
    if (s.identifier && !s.identifier->total)
      fire(*s.identifier, "object identifier");
    for (auto& m : s.mappings)
      if (m.flavor == MappingFlavor::Role && !m.total)
        fire(m, "role");
  }
  return out;
}

RuleOutcome ensure_compulsory(const EmdmScheme& scheme) {
  RuleOutcome out{scheme, {}, {}};
  std::vector<std::string> targets;
  for (const auto& s : out.scheme.sets)
    if (fundamental(s) && std::none_of(s.mappings.begin(), s.mappings.end(), [](const Mapping& m) { return m.total; }))
      targets.push_back(s.name);
  for (const auto& name : targets) {
    const SchemeSet& s = *out.scheme.find_set(name);
    const std::string mapping = free_name(s, "Compulsory");
    const std::string sid = ids::set(name);
    if (mapping != "Compulsory")
      out.diagnostics.push_back(note(Severity::Warning, "name-clash", sid,
                                     "'Compulsory' already exists; generated mapping named '" + mapping + "'"));
    add_generated_mapping(out.scheme, EnrichmentRule::CompulsoryMapping, name, mapping);
    out.diagnostics.push_back(note(Severity::Info, "compulsory-added", sid,
                                   "no total mapping; added " + mapping + " -> ASCII(255), total"));
    EnrichmentAction a;
    a.rule = EnrichmentRule::CompulsoryMapping;
    a.target = sid;
    a.description = "added total mapping " + mapping;
    a.produced = {ids::mapping(name, mapping)};
    a.set = name;
    a.mapping = mapping;
    out.actions.push_back(std::move(a));
  }
  return out;
}

RuleOutcome ensure_structural_key(const EmdmScheme& scheme) {
  RuleOutcome out{scheme, {}, {}};
  std::vector<std::string> targets;
  for (const auto& s : out.scheme.sets) {
    if (s.kind != SchemeSetKind::RelationshipDerived)
      continue;
    const auto roles = s.roles();
    if (roles.empty())
      continue;
    const std::set<std::string> role_set(roles.begin(), roles.end());
    const bool has_role_key =
        std::any_of(s.keys.begin(), s.keys.end(),
                    [&](const Key& k) {
                      return std::all_of(k.mappings.begin(), k.mappings.end(),
                                         [&](const std::string& m) { return role_set.contains(m); });
                    }) ||
        std::any_of(s.mappings.begin(), s.mappings.end(),
                    [](const Mapping& m) { return m.flavor == MappingFlavor::Role && m.one_to_one; });
    if (!has_role_key)
      targets.push_back(s.name);
  }
  for (const auto& name : targets) {
    Key k = structural_key(*out.scheme.find_set(name));
    const bool single = k.mappings.size() == 1;
    if (!single)
      k.label = next_label(out.scheme);
    add_structural_key(out.scheme, name, k.label, k.mappings);
    const std::string sid = ids::set(name);
    const std::string what = single ? "role " + k.mappings.front() + " made one-to-one" : "added " + format_key(k);
    out.diagnostics.push_back(note(Severity::Info, "structural-key", sid, "no key made of roles only; " + what + " (review)"));
    EnrichmentAction a;
    a.rule = EnrichmentRule::StructuralKey;
    a.target = sid;
    a.description = single ? what : "added structural key " + format_key(k);
    a.produced = {single ? ids::mapping(name, k.mappings.front()) : ids::key(name, k.label)};
    a.set = name;
    a.label = k.label;
    a.members = k.mappings;
    out.actions.push_back(std::move(a));
  }
  return out;
}

RuleOutcome collapse_binary_relationships(const EmdmScheme& scheme, QuestionSession& session) {
  RuleOutcome out{scheme, {}, {}};
  std::vector<std::string> candidates;
  for (const auto& s : scheme.sets) {
    if (s.kind != SchemeSetKind::RelationshipDerived)
      continue;
    const auto roles = s.role_signature();
    if (roles.size() != 2)
      continue;
    const Mapping* f = s.find_mapping(roles[0].first);
    const Mapping* g = s.find_mapping(roles[1].first);
    if (f->one_to_one || g->one_to_one)
      candidates.push_back(s.name);
  }

  for (const auto& name : candidates) {
    const SchemeSet& r = *out.scheme.find_set(name);
    const std::string sid = ids::set(name);
    std::string blocker;
    if (r.mappings.size() != 2)
      blocker = "it has attributes or functions of its own";
    for (const auto& k : r.keys)
      if (!k.implicit)
        blocker = "key " + k.label + " involves more than its roles";
    for (const auto& c : out.scheme.constraints) {
      if (const auto* inc = std::get_if<InclusionConstraint>(&c.body); inc && (inc->subset == name || inc->superset == name))
        blocker = "it takes part in an inclusion";
      const Formula* f = nullptr;
      if (const auto* t = std::get_if<TupleConstraint>(&c.body))
        f = &t->formula;
      else if (const auto* n = std::get_if<NonrelationalConstraint>(&c.body); n && n->formula)
        f = &*n->formula;
      if (f)
        for (const auto& [var, domain] : quantified_variables(*f))
          if (domain == name)
            blocker = "constraint " + c.label + " quantifies over it";
    }
    for (const auto& other : out.scheme.sets)
      for (const auto& m : other.mappings)
        if (m.target_set == name)
          blocker = "mapping " + other.name + "." + m.name + " references it";

    const auto roles = r.role_signature();
    const bool f_unique = r.find_mapping(roles[0].first)->one_to_one;
    const bool g_unique = r.find_mapping(roles[1].first)->one_to_one;
    std::string host = f_unique ? roles[0].second : roles[1].second;
    std::string codomain = f_unique ? roles[1].second : roles[0].second;
    if (blocker.empty()) {
      const SchemeSet* h = out.scheme.find_set(host);
      if (!h)
        blocker = "set '" + host + "' does not exist";
      else if (h->find_mapping(name))
        blocker = "set '" + host + "' already has a mapping named '" + name + "'";
    }
    if (!blocker.empty()) {
      out.diagnostics.push_back(note(Severity::Warning, "collapse-skipped", sid,
                                     "binary relationship with a unique role kept because " + blocker));
      continue;
    }

    if (f_unique && g_unique) {
      const std::string forward = roles[0].second + "->" + roles[1].second;
      const std::string backward = roles[1].second + "->" + roles[0].second;
      const auto answer = session.ask(QuestionKind::BijectionDirection, name,
                                      "Direction of one-to-one " + name + " (" + forward + " or " + backward + "):");
      if (answer && *answer == backward && forward != backward) {
        std::swap(host, codomain);
      } else if (!answer || *answer != forward) {
        out.diagnostics.push_back(note(Severity::Warning, "bijection-direction", sid,
                                       "no usable direction given; using " + forward));
      }
      if (host != roles[0].second) {
        const SchemeSet* h = out.scheme.find_set(host);
        if (!h || h->find_mapping(name)) {
          out.diagnostics.push_back(note(Severity::Warning, "collapse-skipped", sid,
                                         "set '" + host + "' cannot receive mapping '" + name + "'"));
          continue;
        }
      }
    }

    const bool one_to_one = f_unique && g_unique;
    collapse(out.scheme, name, host, codomain, one_to_one);
    const std::string produced = ids::mapping(host, name);
    out.diagnostics.push_back(note(Severity::Info, "binary-collapse", sid,
                                   "replaced by " + name + " : " + host + (one_to_one ? " <-> " : " -> ") + codomain));
    EnrichmentAction a;
    a.rule = EnrichmentRule::BinaryCollapse;
    a.target = sid;
    a.description = "relationship replaced by a structural function";
    a.produced = {produced};
    a.set = name;
    a.mapping = name;
    a.host = host;
    a.codomain = codomain;
    a.one_to_one = one_to_one;
    out.actions.push_back(std::move(a));
  }
  return out;
}

RuleOutcome ensure_uniqueness(const EmdmScheme& scheme) {
  RuleOutcome out{scheme, {}, {}};
  std::vector<std::string> targets;
  for (const auto& s : out.scheme.sets)
    if (fundamental(s) && s.keys.empty() &&
        std::none_of(s.mappings.begin(), s.mappings.end(), [](const Mapping& m) { return m.one_to_one; }))
      targets.push_back(s.name);
  for (const auto& name : targets) {
    const SchemeSet& s = *out.scheme.find_set(name);
    const std::string mapping = free_name(s, "UniqueMapping");
    const std::string sid = ids::set(name);
    if (mapping != "UniqueMapping")
      out.diagnostics.push_back(note(Severity::Warning, "name-clash", sid,
                                     "'UniqueMapping' already exists; generated mapping named '" + mapping + "'"));
    add_generated_mapping(out.scheme, EnrichmentRule::UniqueMapping, name, mapping);
    out.diagnostics.push_back(note(Severity::Info, "unique-mapping-added", sid,
                                   "no uniqueness; added " + mapping + " <-> ASCII(255), total"));
    EnrichmentAction a;
    a.rule = EnrichmentRule::UniqueMapping;
    a.target = sid;
    a.description = "added one-to-one mapping " + mapping;
    a.produced = {ids::mapping(name, mapping)};
    a.set = name;
    a.mapping = mapping;
    out.actions.push_back(std::move(a));
  }
  return out;
}

RuleOutcome enrich(const EmdmScheme& scheme, QuestionSession& session) {
  RuleOutcome total{scheme, {}, {}};
  auto absorb = [&](RuleOutcome step) {
    total.scheme = std::move(step.scheme);
    total.actions.insert(total.actions.end(), step.actions.begin(), step.actions.end());
    total.diagnostics.insert(total.diagnostics.end(), step.diagnostics.begin(), step.diagnostics.end());
  };
  absorb(ensure_totality(total.scheme));
  absorb(collapse_binary_relationships(total.scheme, session));
  absorb(ensure_structural_key(total.scheme));
  absorb(ensure_compulsory(total.scheme));
  absorb(ensure_uniqueness(total.scheme));
  return total;
}

void apply_action(EmdmScheme& scheme, const EnrichmentAction& action) {
  switch (action.rule) {
    case EnrichmentRule::Totality: {
      SchemeSet* s = scheme.find_set(action.set);
      Mapping* m = nullptr;
      if (s && action.mapping == "x" && s->identifier)
        m = &*s->identifier;
      else if (s)
        m = s->find_mapping(action.mapping);
      if (!m)
        throw std::invalid_argument("no mapping " + action.set + "." + action.mapping);
      m->total = true;
      return;
    }
    case EnrichmentRule::CompulsoryMapping:
    case EnrichmentRule::UniqueMapping:
      add_generated_mapping(scheme, action.rule, action.set, action.mapping);
      return;
    case EnrichmentRule::StructuralKey:
      add_structural_key(scheme, action.set, action.label, action.members);
      return;
    case EnrichmentRule::BinaryCollapse:
      collapse(scheme, action.set, action.host, action.codomain, action.one_to_one);
      return;
    default:
      throw std::invalid_argument("rule (" + std::string(numeral(action.rule)) + ") applies to the input model");
  }
}

EmdmScheme replay(EmdmScheme scheme, const std::vector<EnrichmentAction>& actions) {
  for (const auto& a : actions)
    if (a.rule >= EnrichmentRule::Totality)
      apply_action(scheme, a);
  return scheme;
}

}  // namespace erc
