#include "erc/translator.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>

namespace erc {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::EntitySet: return "entity-set";
    case StepKind::ComputedSet: return "computed-set";
    case StepKind::RelationshipSet: return "relationship-set";
    case StepKind::Role: return "role";
    case StepKind::StructuralFunction: return "structural-function";
    case StepKind::Attribute: return "attribute";
    case StepKind::Uniqueness: return "uniqueness";
    case StepKind::Compulsory: return "compulsory";
    case StepKind::ConcatenatedUniqueness: return "concatenated-uniqueness";
    case StepKind::Tuple: return "tuple";
    case StepKind::Inclusion: return "inclusion";
    case StepKind::Nonrelational: return "nonrelational";
  }
  return "entity-set";
}

std::optional<StepKind> step_kind_from_string(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(StepKind::Nonrelational); ++i)
    if (to_string(static_cast<StepKind>(i)) == text)
      return static_cast<StepKind>(i);
  return std::nullopt;
}

std::string to_string(const Tally& t) {
  auto n = [](std::size_t v) { return std::to_string(v); };
  return "S=" + n(t.sets()) + " (E=" + n(t.entities) + " CS=" + n(t.computed_sets) + " R=" + n(t.relationships) +
         ") A=" + n(t.mappings()) + " (RA=" + n(t.roles) + " SF=" + n(t.functions) + " EN=" + n(t.ellipses) +
         ") C=" + n(t.restrictions()) + " (NR=" + n(t.nonrelational) + " IC=" + n(t.inclusions) +
         " CR=" + n(t.compulsory) + " U=" + n(t.unique) + " CU=" + n(t.concatenated) + " TR=" + n(t.tuple) +
         ") total=" + n(t.total());
}

Tally tally_steps(const std::vector<Step>& steps) {
  Tally t;
  for (const auto& s : steps) {
    switch (s.kind) {
      case StepKind::EntitySet: ++t.entities; break;
      case StepKind::ComputedSet: ++t.computed_sets; break;
      case StepKind::RelationshipSet: ++t.relationships; break;
      case StepKind::Role: ++t.roles; break;
      case StepKind::StructuralFunction: ++t.functions; break;
      case StepKind::Attribute: ++t.ellipses; break;
      case StepKind::Uniqueness: ++t.unique; break;
      case StepKind::Compulsory: ++t.compulsory; break;
      case StepKind::ConcatenatedUniqueness: ++t.concatenated; break;
      case StepKind::Tuple: ++t.tuple; break;
      case StepKind::Inclusion: ++t.inclusions; break;
      case StepKind::Nonrelational: ++t.nonrelational; break;
    }
  }
  return t;
}

std::string_view to_string(CompulsoryCounting counting) {
  return counting == CompulsoryCounting::PerMapping ? "per-mapping" : "per-restriction";
}

std::optional<CompulsoryCounting> compulsory_counting_from_string(std::string_view text) {
  if (text == "per-mapping")
    return CompulsoryCounting::PerMapping;
  if (text == "per-restriction")
    return CompulsoryCounting::PerRestriction;
  return std::nullopt;
}

std::vector<std::string> counting_conventions(CompulsoryCounting counting) {
  return {
      "sets: one step per entity (E), computed (CS) and relationship (R) set",
      "mappings: one step per role (RA), structural function (SF) and attribute (EN)",
      "ranges, cardinalities: consumed by their attribute or object identifier, no step of their own",
      counting == CompulsoryCounting::PerMapping ? "compulsory (CR): one step per listed mapping"
                                                 : "compulsory (CR): one step per restriction",
      "single uniqueness (U): one step per restriction",
      "concatenated uniqueness (CU): one step per restriction",
      "inclusions (IC): one step per header inclusion or subset_of restriction",
      "other restrictions: one quantified variable -> tuple (TR), otherwise nonrelational (NR)",
  };
}

// Ordering -------------------------------------------------------------------

namespace {

std::vector<std::string> references(const ObjectSet& set, const ERModel& model) {
  std::vector<std::string> out;
  for (const auto& r : set.roles)
    out.push_back(r.target);
  for (const auto& f : set.functions)
    out.push_back(f.target);
  for (const auto& sup : set.included_in)
    out.push_back(sup);
  for (const auto& r : model.restrictions)
    if (r.target == set.name)
      if (const auto* inc = std::get_if<InclusionBody>(&r.body))
        out.push_back(inc->superset);
  return out;
}

}  // namespace

SetOrder bottom_up_order(const ERModel& model) {
  const auto sets = model.sets();
  const std::size_t n = sets.size();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i)
    index.emplace(sets[i]->name, i);

  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& ref : references(*sets[i], model)) {
      auto it = index.find(ref);
      if (it != index.end() && it->second != i)
        out_edges[i].push_back(it->second);
    }
    std::sort(out_edges[i].begin(), out_edges[i].end());
    out_edges[i].erase(std::unique(out_edges[i].begin(), out_edges[i].end()), out_edges[i].end());
  }

  // Tarjan, iterative so that long reference chains cannot overflow the stack.
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order_of(n, unvisited), low(n, 0), component(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (order_of[root] != unvisited)
      continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    order_of[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < out_edges[v].size()) {
        const std::size_t w = out_edges[v][next++];
        if (order_of[w] == unvisited) {
          order_of[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order_of[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty())
        low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == order_of[done]) {
        std::vector<std::size_t> members;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components.size();
          members.push_back(w);
        } while (w != done);
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
      }
    }
  }

  // Kahn over the condensation: a component is ready once everything it
  // references has been emitted.
  const std::size_t c = components.size();
  std::vector<std::size_t> pending(c, 0);
  std::vector<std::vector<std::size_t>> dependents(c);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> targets;
    for (std::size_t w : out_edges[i])
      if (component[w] != component[i])
        targets.insert(component[w]);
    for (std::size_t t : targets) {
      dependents[t].push_back(component[i]);
      ++pending[component[i]];
    }
  }
  using Entry = std::pair<std::size_t, std::size_t>;  // (first declaration index, component)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t k = 0; k < c; ++k)
    if (pending[k] == 0)
      ready.emplace(components[k].front(), k);

  SetOrder result;
  while (!ready.empty()) {
    const std::size_t k = ready.top().second;
    ready.pop();
    if (components[k].size() > 1) {
      std::string names;
      for (std::size_t i : components[k])
        names += (names.empty() ? "" : ", ") + sets[i]->name;
      result.warnings.push_back({Severity::Warning, "reference-cycle",
                                 "sets reference each other (" + names + "); declaration order is used among them",
                                 ids::set(sets[components[k].front()]->name)});
    }
    for (std::size_t i : components[k])
      result.names.push_back(sets[i]->name);
    for (std::size_t d : dependents[k])
      if (--pending[d] == 0)
        ready.emplace(components[d].front(), d);
  }
  return result;
}

namespace {

std::vector<const ObjectSet*> filter_order(const Diagram& diagram, const SetOrder& order, bool diamonds) {
  std::map<std::string_view, const ObjectSet*> here;
  for (const auto& s : diagram.sets)
    if ((s.kind == SetKind::Relationship) == diamonds)
      here.emplace(s.name, &s);
  std::vector<const ObjectSet*> out;
  for (const auto& name : order.names) {
    auto it = here.find(name);
    if (it != here.end()) {
      out.push_back(it->second);
      here.erase(it);
    }
  }
  // Sets missing from `order` keep declaration order at the end.
  for (const auto& s : diagram.sets)
    if (here.contains(s.name))
      out.push_back(&s);
  return out;
}

SetOrder diagram_order(const Diagram& diagram) {
  ERModel alone;
  alone.diagrams.push_back(diagram);
  return bottom_up_order(alone);
}

}  // namespace

std::vector<const ObjectSet*> order_rectangles(const Diagram& diagram, const SetOrder& order) {
  return filter_order(diagram, order, false);
}

std::vector<const ObjectSet*> order_diamonds(const Diagram& diagram, const SetOrder& order) {
  return filter_order(diagram, order, true);
}

std::vector<const ObjectSet*> order_rectangles(const Diagram& diagram) {
  return order_rectangles(diagram, diagram_order(diagram));
}

std::vector<const ObjectSet*> order_diamonds(const Diagram& diagram) {
  return order_diamonds(diagram, diagram_order(diagram));
}

unsigned surrogate_digits(std::uint64_t max_cardinality) {
  unsigned n = 1;
  std::uint64_t power = 10;
  while (power < max_cardinality && n < 20) {
    ++n;
    if (power > std::numeric_limits<std::uint64_t>::max() / 10)
      break;
    power *= 10;
  }
  return n;
}

// Translator -----------------------------------------------------------------

namespace {

// Tuple restrictions may omit `on`; their set is the formula's domain.
std::string effective_target(const Restriction& r) {
  if (r.target.empty() && is_tuple_restriction(r))
    return quantified_variables(*std::get<OtherBody>(r.body).formal).front().second;
  return r.target;
}

}  // namespace

Translator::Translator(const ERModel& model, CompulsoryCounting counting, QuestionSession& session)
    : model_(model), counting_(counting), session_(session) {
  for (const auto& r : model_.restrictions) {
    const std::string target = effective_target(r);
    if (!target.empty())
      by_target_[target].push_back(&r);
  }
}

std::vector<const Restriction*> Translator::restrictions_on(std::string_view set) const {
  auto it = by_target_.find(set);
  return it == by_target_.end() ? std::vector<const Restriction*>{} : it->second;
}

void Translator::step(StepKind kind, std::string source, std::string produced) {
  steps_.push_back({kind, std::move(source), std::move(produced)});
}

void Translator::provenance(std::string element, std::string source, ProvenanceKind kind) {
  scheme_.provenance.push_back({std::move(element), std::move(source), kind});
}

void Translator::diagnose(Severity severity, std::string code, std::string element, std::string message) {
  diagnostics_.push_back({severity, std::move(code), std::move(message), std::move(element)});
}

void Translator::add_set(const ObjectSet& set) {
  if (scheme_.find_set(set.name))
    return;
  if (set.kind == SetKind::Computed) {
    add_computed_set(set);
    return;
  }
  const std::string sid = ids::set(set.name);
  const Restriction* card = nullptr;
  for (const auto* r : restrictions_on(set.name))
    if (std::holds_alternative<CardinalityBody>(r->body))
      card = r;
  std::uint64_t max = kDefaultDbmsMaxCardinality;
  if (set.max_cardinality)
    max = *set.max_cardinality;
  else if (card)
    max = std::get<CardinalityBody>(card->body).max;

  SchemeSet s;
  s.name = set.name;
  s.kind = set.kind == SetKind::Relationship ? SchemeSetKind::RelationshipDerived : SchemeSetKind::EntityDerived;
  Mapping x;
  x.name = "x";
  x.source = set.name;
  x.value_range = Range::nat(static_cast<int>(surrogate_digits(max)));
  x.flavor = MappingFlavor::ObjectIdentifier;
  x.total = true;
  x.one_to_one = true;
  s.identifier = std::move(x);
  scheme_.sets.push_back(std::move(s));

  step(set.kind == SetKind::Relationship ? StepKind::RelationshipSet : StepKind::EntitySet, sid, sid);
  provenance(sid, sid, ProvenanceKind::Translated);
  provenance(ids::mapping(set.name, "x"), sid, ProvenanceKind::Translated);
  if (card)
    provenance(ids::mapping(set.name, "x"), ids::restriction(card->label), ProvenanceKind::Consumed);

  add_inclusions(set);
  if (set.kind != SetKind::Relationship)
    complete_scheme(set);
}

void Translator::add_computed_set(const ObjectSet& set) {
  if (scheme_.find_set(set.name))
    return;
  const std::string sid = ids::set(set.name);
  SchemeSet s;
  s.name = set.name;
  s.kind = SchemeSetKind::Computed;
  s.definition = set.definition;
  scheme_.sets.push_back(std::move(s));
  step(StepKind::ComputedSet, sid, sid);
  provenance(sid, sid, ProvenanceKind::Translated);
  for (const auto* r : restrictions_on(set.name))
    if (std::holds_alternative<CardinalityBody>(r->body))
      provenance(sid, ids::restriction(r->label), ProvenanceKind::Consumed);
  add_inclusions(set);
  complete_scheme(set);
}

void Translator::add_relationship(const ObjectSet& set) {
  if (scheme_.find_set(set.name))
    return;
  add_set(set);
  SchemeSet& s = *scheme_.find_set(set.name);
  for (const auto& role : set.roles) {
    if (!model_.find_set(role.target))
      diagnose(Severity::Error, "unresolved-reference", ids::role(set.name, role.name),
               "role target '" + role.target + "' does not exist");
    Mapping m;
    m.name = role.name;
    m.source = set.name;
    m.target_set = role.target;
    m.flavor = MappingFlavor::Role;
    m.one_to_one = role.declared_unique;
    s.mappings.push_back(std::move(m));
    step(StepKind::Role, ids::role(set.name, role.name), ids::mapping(set.name, role.name));
    provenance(ids::mapping(set.name, role.name), ids::role(set.name, role.name), ProvenanceKind::Translated);
  }
  if (set.roles.size() == 1)
    diagnose(Severity::Warning, "unary-relationship", ids::set(set.name),
             "relationship has a single role; it is translated like any other");
  complete_scheme(set);
}

void Translator::add_inclusions(const ObjectSet& set) {
  for (const auto& sup : set.included_in) {
    if (!model_.find_set(sup))
      diagnose(Severity::Error, "unresolved-reference", ids::set(set.name), "superset '" + sup + "' does not exist");
    Constraint c{"", InclusionConstraint{set.name, sup}};
    const std::string id = ids::constraint(c);
    scheme_.constraints.push_back(std::move(c));
    step(StepKind::Inclusion, ids::header_inclusion(set.name, sup), id);
    provenance(id, ids::header_inclusion(set.name, sup), ProvenanceKind::Translated);
  }
  for (const auto* r : restrictions_on(set.name)) {
    const auto* inc = std::get_if<InclusionBody>(&r->body);
    if (!inc)
      continue;
    if (!model_.find_set(inc->superset))
      diagnose(Severity::Error, "unresolved-reference", ids::restriction(r->label),
               "superset '" + inc->superset + "' does not exist");
    Constraint c{r->label, InclusionConstraint{set.name, inc->superset}};
    const std::string id = ids::constraint(c);
    scheme_.constraints.push_back(std::move(c));
    step(StepKind::Inclusion, ids::restriction(r->label), id);
    provenance(id, ids::restriction(r->label), ProvenanceKind::Translated);
  }
}

void Translator::add_tuple_constraint(std::string set, std::string label, Formula formula) {
  scheme_.constraints.push_back({std::move(label), TupleConstraint{std::move(set), std::move(formula)}});
}

void Translator::complete_scheme(const ObjectSet& set) {
  SchemeSet* s = scheme_.find_set(set.name);
  if (!s)
    return;
  const auto rs = restrictions_on(set.name);

  for (const auto& f : set.functions) {
    Mapping m;
    m.name = f.name;
    m.source = set.name;
    m.target_set = f.target;
    m.flavor = MappingFlavor::StructuralFunction;
    m.computed = f.computed;
    m.definition = f.definition;
    s->mappings.push_back(std::move(m));
    step(StepKind::StructuralFunction, ids::function(set.name, f.name), ids::mapping(set.name, f.name));
    provenance(ids::mapping(set.name, f.name), ids::function(set.name, f.name), ProvenanceKind::Translated);
  }

  auto singles_on = [&](std::string_view mapping) {
    std::vector<const Restriction*> out;
    for (const auto* r : rs)
      if (const auto* u = std::get_if<UniquenessBody>(&r->body); u && u->mappings.size() == 1 && u->mappings[0] == mapping)
        out.push_back(r);
    return out;
  };
  auto make_unique = [&](const Restriction& r, const std::string& mapping) {
    const std::string mid = ids::mapping(set.name, mapping);
    Mapping* m = s->find_mapping(mapping);
    if (!m) {
      diagnose(Severity::Error, "unknown-mapping", ids::restriction(r.label), "set has no mapping '" + mapping + "'");
      return;
    }
    m->one_to_one = true;
    if (m->unique_label.empty())
      m->unique_label = r.label;
    step(StepKind::Uniqueness, ids::restriction(r.label), mid);
    provenance(mid, ids::restriction(r.label), ProvenanceKind::Consumed);
  };

  for (const auto& a : set.attributes) {
    const std::string mid = ids::mapping(set.name, a.name);
    Mapping m;
    m.name = a.name;
    m.source = set.name;
    m.flavor = MappingFlavor::Attribute;
    m.computed = a.computed;
    m.definition = a.definition;
    const Restriction* range_restriction = nullptr;
    for (const auto* r : rs)
      if (const auto* rb = std::get_if<RangeBody>(&r->body); rb && rb->attribute == a.name)
        range_restriction = r;
    if (!a.computed) {
      if (a.range)
        m.value_range = a.range;
      else if (range_restriction)
        m.value_range = std::get<RangeBody>(range_restriction->body).range;
      else
        m.value_range = Range::ascii(255);
    }
    s->mappings.push_back(std::move(m));
    step(StepKind::Attribute, ids::attribute(set.name, a.name), mid);
    provenance(mid, ids::attribute(set.name, a.name), ProvenanceKind::Translated);
    if (range_restriction)
      provenance(mid, ids::restriction(range_restriction->label), ProvenanceKind::Consumed);
    for (const auto* r : singles_on(a.name))
      make_unique(*r, a.name);
  }

  for (const auto* r : rs) {
    const auto* u = std::get_if<UniquenessBody>(&r->body);
    if (u && u->mappings.size() == 1 && !set.find_attribute(u->mappings[0]))
      make_unique(*r, u->mappings[0]);
  }

  for (const auto* r : rs) {
    const auto* c = std::get_if<CompulsoryBody>(&r->body);
    if (!c)
      continue;
    bool counted = false;
    for (const auto& name : c->mappings) {
      const std::string mid = ids::mapping(set.name, name);
      Mapping* m = s->find_mapping(name);
      if (!m) {
        diagnose(Severity::Error, "unknown-mapping", ids::restriction(r->label), "set has no mapping '" + name + "'");
        continue;
      }
      m->total = true;
      if (m->total_label.empty())
        m->total_label = r->label;
      if (counting_ == CompulsoryCounting::PerMapping) {
        const std::string member = ids::restriction_member(r->label, name);
        step(StepKind::Compulsory, member, mid);
        provenance(mid, member, ProvenanceKind::Consumed);
      } else {
        if (!counted)
          step(StepKind::Compulsory, ids::restriction(r->label), mid);
        counted = true;
        provenance(mid, ids::restriction(r->label), ProvenanceKind::Consumed);
      }
    }
  }

  for (const auto* r : rs) {
    const auto* u = std::get_if<UniquenessBody>(&r->body);
    if (!u || u->mappings.size() < 2)
      continue;
    bool resolved = true;
    for (const auto& name : u->mappings)
      if (!s->find_mapping(name)) {
        diagnose(Severity::Error, "unknown-mapping", ids::restriction(r->label), "set has no mapping '" + name + "'");
        resolved = false;
      }
    if (!resolved)
      continue;
    Key key{r->label, u->mappings, false, false, false};
    key.implicit = is_implicit_key(key, *s);
    const std::string kid = ids::key(set.name, r->label);
    s->keys.push_back(key);
    step(StepKind::ConcatenatedUniqueness, ids::restriction(r->label), kid);
    if (key.implicit) {
      provenance(kid, ids::restriction(r->label), ProvenanceKind::Absorbed);
      diagnose(Severity::Info, "absorbed-key", ids::restriction(r->label),
               "uniqueness over all roles is implied by the relationship and is not printed");
    } else {
      provenance(kid, ids::restriction(r->label), ProvenanceKind::Translated);
    }
  }

  for (const auto* r : rs) {
    if (!is_tuple_restriction(*r))
      continue;
    add_tuple_constraint(set.name, r->label, *std::get<OtherBody>(r->body).formal);
    step(StepKind::Tuple, ids::restriction(r->label), "constraint:" + r->label);
    provenance("constraint:" + r->label, ids::restriction(r->label), ProvenanceKind::Translated);
  }
}

void Translator::add_nonrelational(const Restriction& r) {
  const auto& body = std::get<OtherBody>(r.body);
  const std::string rid = ids::restriction(r.label);
  const std::string cid = "constraint:" + r.label;
  step(StepKind::Nonrelational, rid, cid);
  provenance(cid, rid, ProvenanceKind::Translated);

  if (body.formal) {
    scheme_.constraints.push_back({r.label, NonrelationalConstraint{body.formal, body.informal}});
    return;
  }

  const auto answer = session_.ask(QuestionKind::Formalization, r.label,
                                   "Formalize " + r.label + " (\"" + body.informal + "\") as a closed formula:");
  if (!answer) {
    diagnose(Severity::Warning, "unformalized", rid, "no formula supplied; kept as informal text");
    scheme_.constraints.push_back({r.label, NonrelationalConstraint{std::nullopt, body.informal}});
    return;
  }

  auto parsed = parse_formula(*answer);
  std::string problem;
  Constraint candidate;
  if (!parsed.ok()) {
    problem = to_string(parsed.errors.front());
  } else {
    const auto vars = quantified_variables(*parsed.formula);
    std::set<std::string> names;
    for (const auto& v : vars)
      names.insert(v.first);
    if (vars.empty())
      problem = "formula quantifies no variable";
    else if (names.size() != vars.size())
      problem = "a variable is quantified twice";
    else if (!free_variables(*parsed.formula).empty())
      problem = "formula has free variables";
    else if (vars.size() == 1)
      candidate = {r.label, TupleConstraint{vars.front().second, *parsed.formula}};
    else
      candidate = {r.label, NonrelationalConstraint{*parsed.formula, body.informal}};
  }
  if (problem.empty()) {
    EmdmScheme probe;
    probe.sets = scheme_.sets;
    probe.constraints = {candidate};
    probe.provenance = scheme_.provenance;
    for (const auto& d : check_scheme(probe))
      if (d.element == cid && problem.empty())
        problem = d.message;
  }
  if (!problem.empty()) {
    diagnose(Severity::Warning, "invalid-formalization", rid, problem + "; kept as informal text");
    scheme_.constraints.push_back({r.label, NonrelationalConstraint{std::nullopt, body.informal}});
    return;
  }
  if (std::holds_alternative<TupleConstraint>(candidate.body))
    diagnose(Severity::Info, "formalized-as-tuple", rid,
             "formula quantifies one variable and is kept with set '" +
                 std::get<TupleConstraint>(candidate.body).set + "'");
  scheme_.constraints.push_back(std::move(candidate));
}

void Translator::run() {
  const SetOrder order = bottom_up_order(model_);
  diagnostics_.insert(diagnostics_.end(), order.warnings.begin(), order.warnings.end());
  for (const auto& diagram : model_.diagrams) {
    for (const auto* set : order_rectangles(diagram, order)) {
      if (set->kind == SetKind::Computed)
        add_computed_set(*set);
      else
        add_set(*set);
    }
    for (const auto* set : order_diamonds(diagram, order))
      add_relationship(*set);
  }
  for (const auto& r : model_.restrictions)
    if (is_nonrelational_restriction(r))
      add_nonrelational(r);
}

TranslationResult translate(const ERModel& model, const TranslationOptions& options) {
  TranslationResult result;
  TranslationReport& report = result.report;
  report.compulsory_counting = options.compulsory_counting;
  result.effective_model = model;

  for (const auto& e : validate_model(model))
    report.diagnostics.push_back({Severity::Error, e.code, e.message, e.element});
  if (has_errors(report.diagnostics))
    return result;

  QuestionSession session(options.answers, options.interactive ? options.prompter : Prompter{});
  auto defaults = apply_input_defaults(model, options.dbms_max_cardinality, session);
  report.diagnostics = std::move(defaults.diagnostics);
  report.actions = std::move(defaults.actions);
  result.effective_model = std::move(defaults.model);
  if (has_errors(report.diagnostics)) {
    report.questions = session.questions();
    return result;
  }

  Translator translator(result.effective_model, options.compulsory_counting, session);
  translator.run();
  report.steps = translator.steps();
  report.tally = tally_steps(report.steps);
  report.diagnostics.insert(report.diagnostics.end(), translator.diagnostics().begin(),
                            translator.diagnostics().end());

  auto enriched = enrich(translator.scheme(), session);
  report.actions.insert(report.actions.end(), enriched.actions.begin(), enriched.actions.end());
  report.diagnostics.insert(report.diagnostics.end(), enriched.diagnostics.begin(), enriched.diagnostics.end());
  const auto soundness = check_scheme(enriched.scheme);
  report.diagnostics.insert(report.diagnostics.end(), soundness.begin(), soundness.end());
  report.questions = session.questions();

  if (!has_errors(report.diagnostics))
    result.scheme = std::move(enriched.scheme);
  return result;
}

}  // namespace erc
