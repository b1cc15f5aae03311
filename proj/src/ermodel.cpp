#include "erc/ermodel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace erc {

// Bounds and ranges ----------------------------------------------------------

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("not an integer: " + std::string(text));
  return value;
}

}  // namespace

Bound Bound::integer(std::string text) {
  std::int64_t value = 0;
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const std::int64_t base = parse_int(std::string_view(text).substr(0, caret));
    const std::int64_t exponent = parse_int(std::string_view(text).substr(caret + 1));
    if (exponent < 0)
      throw std::invalid_argument("negative exponent in " + text);
    value = 1;
    for (std::int64_t i = 0; i < exponent; ++i) {
      if (base != 0 && std::abs(value) > std::numeric_limits<std::int64_t>::max() / std::abs(base))
        throw std::invalid_argument("integer overflow in " + text);
      value *= base;
    }
  } else {
    value = parse_int(text);
  }
  return Bound{Kind::Integer, std::move(text), value};
}

Bound Bound::date(std::string text) {
  const auto first = text.find('/');
  const auto second = first == std::string::npos ? first : text.find('/', first + 1);
  if (second == std::string::npos)
    throw std::invalid_argument("not a day/month/year date: " + text);
  const std::string_view view(text);
  const auto day = parse_int(view.substr(0, first));
  const auto month = parse_int(view.substr(first + 1, second - first - 1));
  const auto year = parse_int(view.substr(second + 1));
  if (day < 1 || day > 31 || month < 1 || month > 12 || year < 0)
    throw std::invalid_argument("invalid date: " + text);
  return Bound{Kind::Date, std::move(text), year * 10000 + month * 100 + day};
}

Bound Bound::function(std::string text) { return Bound{Kind::Function, std::move(text), 0}; }

Range Range::interval(Bound lo, Bound hi) {
  Range r;
  r.form = Form::Interval;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

Range Range::ascii(int length) {
  Range r;
  r.form = Form::Ascii;
  r.length = length;
  return r;
}

Range Range::nat(int digits) {
  Range r;
  r.form = Form::Nat;
  r.length = digits;
  return r;
}

std::string to_string(const Range& range) {
  switch (range.form) {
    case Range::Form::Interval:
      return "[" + range.lo.text + ", " + range.hi.text + "]";
    case Range::Form::Ascii:
      return "ASCII(" + std::to_string(range.length) + ")";
    case Range::Form::Nat:
      return "NAT(" + std::to_string(range.length) + ")";
  }
  return {};
}

// Lookups --------------------------------------------------------------------

std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::Entity:
      return "entity";
    case SetKind::Relationship:
      return "relationship";
    case SetKind::Computed:
      return "computed";
  }
  return "entity";
}

const Attribute* ObjectSet::find_attribute(std::string_view n) const {
  auto it = std::find_if(attributes.begin(), attributes.end(), [&](const Attribute& a) { return a.name == n; });
  return it == attributes.end() ? nullptr : &*it;
}

const Role* ObjectSet::find_role(std::string_view n) const {
  auto it = std::find_if(roles.begin(), roles.end(), [&](const Role& r) { return r.name == n; });
  return it == roles.end() ? nullptr : &*it;
}

const StructuralFunction* ObjectSet::find_function(std::string_view n) const {
  auto it = std::find_if(functions.begin(), functions.end(),
                         [&](const StructuralFunction& f) { return f.name == n; });
  return it == functions.end() ? nullptr : &*it;
}

bool ObjectSet::has_mapping(std::string_view n) const {
  return find_attribute(n) || find_role(n) || find_function(n);
}

const ObjectSet* ERModel::find_set(std::string_view name) const {
  for (const auto& d : diagrams)
    for (const auto& s : d.sets)
      if (s.name == name)
        return &s;
  return nullptr;
}

const Restriction* ERModel::find_restriction(std::string_view label) const {
  auto it = std::find_if(restrictions.begin(), restrictions.end(),
                         [&](const Restriction& r) { return r.label == label; });
  return it == restrictions.end() ? nullptr : &*it;
}

std::vector<const ObjectSet*> ERModel::sets() const {
  std::vector<const ObjectSet*> out;
  for (const auto& d : diagrams)
    for (const auto& s : d.sets)
      out.push_back(&s);
  return out;
}

// Classification ---------------------------------------------------------------

std::string_view to_string(RestrictionClass c) {
  switch (c) {
    case RestrictionClass::Inclusion:
      return "inclusion";
    case RestrictionClass::Range:
      return "range";
    case RestrictionClass::Compulsory:
      return "compulsory";
    case RestrictionClass::Uniqueness:
      return "uniqueness";
    case RestrictionClass::Other:
      return "other";
  }
  return "other";
}

RestrictionClass classify_restriction(const Restriction& restriction) {
  struct Visitor {
    RestrictionClass operator()(const InclusionBody&) const { return RestrictionClass::Inclusion; }
    RestrictionClass operator()(const RangeBody&) const { return RestrictionClass::Range; }
    RestrictionClass operator()(const CardinalityBody&) const { return RestrictionClass::Range; }
    RestrictionClass operator()(const CompulsoryBody&) const { return RestrictionClass::Compulsory; }
    RestrictionClass operator()(const UniquenessBody&) const { return RestrictionClass::Uniqueness; }
    RestrictionClass operator()(const OtherBody&) const { return RestrictionClass::Other; }
  };
  return std::visit(Visitor{}, restriction.body);
}

bool is_tuple_restriction(const Restriction& restriction) {
  const auto* other = std::get_if<OtherBody>(&restriction.body);
  return other && other->formal && quantifier_count(*other->formal) == 1;
}

bool is_nonrelational_restriction(const Restriction& restriction) {
  return std::holds_alternative<OtherBody>(restriction.body) && !is_tuple_restriction(restriction);
}

// Validation -----------------------------------------------------------------

std::string to_string(const ModelError& error) {
  std::string out;
  if (error.loc.line > 0)
    out += std::to_string(error.loc.line) + ":" + std::to_string(error.loc.column) + ": ";
  out += "error[" + error.code + "]";
  if (!error.element.empty())
    out += " " + error.element;
  return out + ": " + error.message;
}

namespace {

class Validator {
 public:
  explicit Validator(const ERModel& model) : model_(model) {}

  std::vector<ModelError> run() {
    check_names();
    for (const ObjectSet* set : model_.sets())
      check_set(*set);
    for (const auto& r : model_.restrictions)
      check_restriction(r);
    return std::move(errors_);
  }

 private:
  void error(std::string code, std::string element, std::string message, SourceLoc loc) {
    errors_.push_back({std::move(code), std::move(element), std::move(message), loc});
  }

  void check_names() {
    std::set<std::string, std::less<>> sets;
    for (const ObjectSet* set : model_.sets())
      if (!sets.insert(set->name).second)
        error("duplicate-set", set->name, "object set '" + set->name + "' is declared more than once", set->loc);
    std::set<std::string, std::less<>> labels;
    for (const auto& r : model_.restrictions)
      if (!labels.insert(r.label).second)
        error("duplicate-label", r.label, "restriction label '" + r.label + "' is used more than once", r.loc);
  }

  void resolve(std::string_view name, const std::string& element, SourceLoc loc) {
    if (!model_.find_set(name))
      error("unresolved-reference", element, "no object set named '" + std::string(name) + "'", loc);
  }

  void check_range(const Range& range, const std::string& element, SourceLoc loc) {
    if (range.form != Range::Form::Interval) {
      if (range.length <= 0)
        error("invalid-range", element, "range length must be positive", loc);
      return;
    }
    const bool comparable = range.lo.kind == range.hi.kind && range.lo.kind != Bound::Kind::Function;
    if (comparable && range.lo.value > range.hi.value)
      error("inverted-range", element, "lower bound " + range.lo.text + " exceeds upper bound " + range.hi.text, loc);
  }

  void check_set(const ObjectSet& set) {
    const std::string element = set.name;
    std::set<std::string, std::less<>> members;
    auto member = [&](const std::string& name, SourceLoc loc) {
      if (name == "x")
        error("reserved-mapping-name", set.name + "." + name, "'x' names the object identifier", loc);
      if (!members.insert(name).second)
        error("duplicate-mapping", set.name + "." + name, "mapping '" + name + "' is declared more than once", loc);
    };

    for (const auto& a : set.attributes) {
      member(a.name, a.loc);
      if (a.computed && a.range)
        error("computed-attribute-with-range", set.name + "." + a.name,
              "a computed attribute cannot also declare a range", a.loc);
      if (a.range)
        check_range(*a.range, set.name + "." + a.name, a.loc);
    }
    for (const auto& r : set.roles) {
      member(r.name, r.loc);
      resolve(r.target, set.name + "." + r.name, r.loc);
    }
    for (const auto& f : set.functions) {
      member(f.name, f.loc);
      if (f.source != set.name)
        error("function-source-mismatch", set.name + "." + f.name,
              "structural function source '" + f.source + "' is not its owner", f.loc);
      resolve(f.target, set.name + "." + f.name, f.loc);
    }

    if (set.kind == SetKind::Relationship && set.roles.empty())
      error("relationship-without-roles", element, "relationship '" + set.name + "' has no roles", set.loc);
    if (set.kind != SetKind::Relationship && !set.roles.empty())
      error("roles-on-non-relationship", element, "only relationships have roles", set.loc);

    std::set<std::string, std::less<>> supersets;
    for (const auto& super : set.included_in) {
      resolve(super, set.name, set.loc);
      if (super == set.name)
        error("self-inclusion", element, "a set cannot be declared a subset of itself", set.loc);
      if (!supersets.insert(super).second)
        error("duplicate-inclusion", element, "inclusion in '" + super + "' is declared more than once", set.loc);
    }
    if (set.max_cardinality && *set.max_cardinality == 0)
      error("invalid-cardinality", element, "maximum cardinality must be at least 1", set.loc);
  }

  void check_mapping_list(const Restriction& r, const ObjectSet& set, const std::vector<std::string>& names) {
    if (names.empty())
      error("empty-mapping-list", r.label, "restriction lists no mappings", r.loc);
    std::set<std::string, std::less<>> seen;
    for (const auto& n : names) {
      if (!set.has_mapping(n))
        error("unknown-mapping", r.label, "'" + set.name + "' has no attribute, role or function '" + n + "'", r.loc);
      if (!seen.insert(n).second)
        error("repeated-mapping", r.label, "mapping '" + n + "' is listed twice", r.loc);
    }
  }

  void check_restriction(const Restriction& r) {
    const ObjectSet* set = nullptr;
    if (!r.target.empty()) {
      set = model_.find_set(r.target);
      if (!set) {
        error("unresolved-reference", r.label, "no object set named '" + r.target + "'", r.loc);
        return;
      }
    } else if (!std::holds_alternative<OtherBody>(r.body)) {
      error("missing-target", r.label, "restriction needs an 'on' set", r.loc);
      return;
    }

    if (const auto* b = std::get_if<InclusionBody>(&r.body)) {
      resolve(b->superset, r.label, r.loc);
      if (b->superset == set->name)
        error("self-inclusion", r.label, "a set cannot be declared a subset of itself", r.loc);
      const bool in_header = std::find(set->included_in.begin(), set->included_in.end(), b->superset) !=
                             set->included_in.end();
      const std::pair key{set->name, b->superset};
      if (in_header || !inclusions_.insert(key).second)
        error("duplicate-inclusion", r.label, "inclusion " + set->name + " subset_of " + b->superset +
                                                  " is declared more than once", r.loc);
    } else if (const auto* b = std::get_if<RangeBody>(&r.body)) {
      const Attribute* a = set->find_attribute(b->attribute);
      if (!a) {
        error("unknown-mapping", r.label, "'" + set->name + "' has no attribute '" + b->attribute + "'", r.loc);
        return;
      }
      check_range(b->range, r.label, r.loc);
      if (a->computed)
        error("computed-attribute-with-range", r.label, "a computed attribute cannot also have a range", r.loc);
      if (a->range || !ranged_.insert({set->name, a->name}).second)
        error("duplicate-range", r.label, "attribute '" + set->name + "." + a->name + "' has two ranges", r.loc);
    } else if (const auto* b = std::get_if<CardinalityBody>(&r.body)) {
      if (b->max == 0)
        error("invalid-cardinality", r.label, "maximum cardinality must be at least 1", r.loc);
      if (set->max_cardinality || !carded_.insert(set->name).second)
        error("duplicate-cardinality", r.label, "'" + set->name + "' has two cardinality bounds", r.loc);
    } else if (const auto* b = std::get_if<CompulsoryBody>(&r.body)) {
      check_mapping_list(r, *set, b->mappings);
    } else if (const auto* b = std::get_if<UniquenessBody>(&r.body)) {
      check_mapping_list(r, *set, b->mappings);
      std::set<std::string> members(b->mappings.begin(), b->mappings.end());
      auto& seen = uniqueness_[set->name];
      if (std::find(seen.begin(), seen.end(), members) != seen.end())
        error("duplicate-uniqueness", r.label, "the same mappings are already declared unique", r.loc);
      seen.push_back(std::move(members));
    } else if (const auto* b = std::get_if<OtherBody>(&r.body)) {
      check_other(r, *b);
    }
  }

  void check_other(const Restriction& r, const OtherBody& b) {
    if (!b.formal) {
      if (b.informal.empty())
        error("empty-restriction", r.label, "an other-restriction needs informal text or a formula", r.loc);
      return;
    }
    const Formula& f = *b.formal;
    const auto quantified = quantified_variables(f);
    if (quantified.empty()) {
      error("formula-without-quantifier", r.label, "a constraint formula must quantify over a set", r.loc);
      return;
    }
    std::set<std::string> names;
    for (const auto& [var, domain] : quantified) {
      resolve(domain, r.label, r.loc);
      if (!names.insert(var).second)
        error("rebound-variable", r.label, "variable '" + var + "' is quantified twice", r.loc);
    }
    for (const auto& v : free_variables(f))
      error("unbound-variable", r.label, "variable '" + v + "' is not quantified", r.loc);
    if (names.size() == 1 && !r.target.empty() && quantified.front().second != r.target)
      error("tuple-target-mismatch", r.label,
            "single-variable formula ranges over '" + quantified.front().second + "' but the restriction is on '" +
                r.target + "'",
            r.loc);
  }

  const ERModel& model_;
  std::vector<ModelError> errors_;
  std::set<std::pair<std::string, std::string>> inclusions_;
  std::set<std::pair<std::string, std::string>> ranged_;
  std::set<std::string> carded_;
  std::map<std::string, std::vector<std::set<std::string>>> uniqueness_;
};

}  // namespace

std::vector<ModelError> validate_model(const ERModel& model) { return Validator(model).run(); }

}  // namespace erc
