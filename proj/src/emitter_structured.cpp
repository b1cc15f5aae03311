#include <set>

#include <nlohmann/json.hpp>

#include "erc/emitter.hpp"

namespace erc {

using nlohmann::json;
using nlohmann::ordered_json;

StructuredFormatError::StructuredFormatError(std::string message, std::string path, int line, int column)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      path_(std::move(path)),
      line_(line),
      column_(column) {}

namespace {

std::string_view to_string(Bound::Kind kind) {
  switch (kind) {
    case Bound::Kind::Integer: return "integer";
    case Bound::Kind::Date: return "date";
    case Bound::Kind::Function: return "function";
  }
  return "integer";
}

std::string_view to_string(Range::Form form) {
  switch (form) {
    case Range::Form::Interval: return "interval";
    case Range::Form::Ascii: return "ascii";
    case Range::Form::Nat: return "nat";
  }
  return "ascii";
}

ordered_json range_json(const Range& r) {
  ordered_json j;
  j["form"] = to_string(r.form);
  if (r.form == Range::Form::Interval) {
    j["lo"] = {{"kind", to_string(r.lo.kind)}, {"text", r.lo.text}};
    j["hi"] = {{"kind", to_string(r.hi.kind)}, {"text", r.hi.text}};
  } else {
    j["length"] = r.length;
  }
  return j;
}

ordered_json mapping_json(const Mapping& m) {
  ordered_json j;
  j["name"] = m.name;
  j["source"] = m.source;
  j["flavor"] = to_string(m.flavor);
  j["range"] = m.value_range ? range_json(*m.value_range) : ordered_json(nullptr);
  j["target"] = m.maps_to_set() ? ordered_json(m.target_set) : ordered_json(nullptr);
  j["total"] = m.total;
  j["one_to_one"] = m.one_to_one;
  j["computed"] = m.computed;
  j["definition"] = m.definition;
  j["total_label"] = m.total_label;
  j["unique_label"] = m.unique_label;
  return j;
}

ordered_json set_json(const SchemeSet& s) {
  ordered_json j;
  j["name"] = s.name;
  j["kind"] = erc::to_string(s.kind);
  j["identifier"] = s.identifier ? mapping_json(*s.identifier) : ordered_json(nullptr);
  j["mappings"] = ordered_json::array();
  for (const auto& m : s.mappings)
    j["mappings"].push_back(mapping_json(m));
  j["keys"] = ordered_json::array();
  for (const auto& k : s.keys)
    j["keys"].push_back({{"label", k.label},
                         {"mappings", k.mappings},
                         {"implicit", k.implicit},
                         {"generated", k.generated},
                         {"review", k.review}});
  j["definition"] = s.definition;
  return j;
}

ordered_json constraint_json(const Constraint& c) {
  ordered_json j;
  j["label"] = c.label;
  if (const auto* inc = std::get_if<InclusionConstraint>(&c.body)) {
    j["kind"] = "inclusion";
    j["subset"] = inc->subset;
    j["superset"] = inc->superset;
  } else if (const auto* t = std::get_if<TupleConstraint>(&c.body)) {
    j["kind"] = "tuple";
    j["set"] = t->set;
    j["formula"] = print_formula(t->formula);
  } else {
    const auto& n = std::get<NonrelationalConstraint>(c.body);
    j["kind"] = "nonrelational";
    j["formula"] = n.formula ? ordered_json(print_formula(*n.formula)) : ordered_json(nullptr);
    j["informal"] = n.informal;
  }
  return j;
}

ordered_json tally_json(const Tally& t) {
  return {{"E", t.entities},        {"CS", t.computed_sets}, {"R", t.relationships}, {"RA", t.roles},
          {"SF", t.functions},      {"EN", t.ellipses},      {"NR", t.nonrelational}, {"IC", t.inclusions},
          {"CR", t.compulsory},     {"U", t.unique},         {"CU", t.concatenated}, {"TR", t.tuple},
          {"S", t.sets()},          {"A", t.mappings()},     {"C", t.restrictions()}, {"total", t.total()}};
}

ordered_json report_json(const TranslationReport& r) {
  ordered_json j;
  j["compulsory_counting"] = erc::to_string(r.compulsory_counting);
  j["conventions"] = counting_conventions(r.compulsory_counting);
  j["tally"] = tally_json(r.tally);
  j["steps"] = ordered_json::array();
  for (const auto& s : r.steps)
    j["steps"].push_back({{"kind", erc::to_string(s.kind)}, {"source", s.source}, {"produced", s.produced}});
  j["diagnostics"] = ordered_json::array();
  for (const auto& d : r.diagnostics)
    j["diagnostics"].push_back({{"severity", erc::to_string(d.severity)},
                                {"code", d.code},
                                {"element", d.element},
                                {"message", d.message}});
  j["questions"] = ordered_json::array();
  for (const auto& q : r.questions)
    j["questions"].push_back({{"kind", erc::to_string(q.kind)},
                              {"key", q.key},
                              {"prompt", q.prompt},
                              {"answer", q.answer ? ordered_json(*q.answer) : ordered_json(nullptr)},
                              {"origin", erc::to_string(q.origin)}});
  j["actions"] = ordered_json::array();
  for (const auto& a : r.actions)
    j["actions"].push_back({{"rule", numeral(a.rule)},
                            {"target", a.target},
                            {"description", a.description},
                            {"produced", a.produced},
                            {"set", a.set},
                            {"mapping", a.mapping},
                            {"label", a.label},
                            {"host", a.host},
                            {"codomain", a.codomain},
                            {"members", a.members},
                            {"one_to_one", a.one_to_one}});
  return j;
}

// Loading ----------------------------------------------------------------------

class Reader {
 public:
  std::vector<std::string> warnings;

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw StructuredFormatError(message, path);
  }

  // Warns about keys outside `known`.
  void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> known) {
    if (!j.is_object())
      fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
      bool ok = false;
      for (auto k : known)
        ok |= k == key;
      if (!ok)
        warnings.push_back("unknown field " + path + "/" + key + " ignored");
    }
  }

  const json& field(const json& j, const std::string& path, const char* key) const {
    auto it = j.find(key);
    if (it == j.end())
      fail(path + "/" + key, "missing field '" + std::string(key) + "'");
    return *it;
  }

  std::string string(const json& j, const std::string& path, const char* key) const {
    const json& v = field(j, path, key);
    if (!v.is_string())
      fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  std::optional<std::string> nullable_string(const json& j, const std::string& path, const char* key) const {
    const json& v = field(j, path, key);
    if (v.is_null())
      return std::nullopt;
    if (!v.is_string())
      fail(path + "/" + key, "expected a string or null");
    return v.get<std::string>();
  }

  bool boolean(const json& j, const std::string& path, const char* key) const {
    const json& v = field(j, path, key);
    if (!v.is_boolean())
      fail(path + "/" + key, "expected true or false");
    return v.get<bool>();
  }

  std::size_t count(const json& j, const std::string& path, const char* key) const {
    const json& v = field(j, path, key);
    if (!v.is_number_unsigned())
      fail(path + "/" + key, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  const json& array(const json& j, const std::string& path, const char* key) const {
    const json& v = field(j, path, key);
    if (!v.is_array())
      fail(path + "/" + key, "expected an array");
    return v;
  }

  std::vector<std::string> strings(const json& j, const std::string& path, const char* key) const {
    std::vector<std::string> out;
    const json& arr = array(j, path, key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string())
        fail(path + "/" + key + "/" + std::to_string(i), "expected a string");
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  }

  template <typename T, typename F>
  T enumerated(const json& j, const std::string& path, const char* key, F from_string) const {
    const std::string text = string(j, path, key);
    auto v = from_string(text);
    if (!v)
      fail(path + "/" + key, "unknown value '" + text + "'");
    return *v;
  }

  Bound bound(const json& j, const std::string& path) {
    expect_object(j, path, {"kind", "text"});
    const std::string kind = string(j, path, "kind");
    const std::string text = string(j, path, "text");
    try {
      if (kind == "integer")
        return Bound::integer(text);
      if (kind == "date")
        return Bound::date(text);
      if (kind == "function")
        return Bound::function(text);
    } catch (const std::invalid_argument& e) {
      fail(path + "/text", e.what());
    }
    fail(path + "/kind", "unknown bound kind '" + kind + "'");
  }

  Range range(const json& j, const std::string& path) {
    expect_object(j, path, {"form", "lo", "hi", "length"});
    const std::string form = string(j, path, "form");
    if (form == "interval")
      return Range::interval(bound(field(j, path, "lo"), path + "/lo"), bound(field(j, path, "hi"), path + "/hi"));
    const auto length = count(j, path, "length");
    if (form == "ascii")
      return Range::ascii(static_cast<int>(length));
    if (form == "nat")
      return Range::nat(static_cast<int>(length));
    fail(path + "/form", "unknown range form '" + form + "'");
  }

  Mapping mapping(const json& j, const std::string& path) {
    expect_object(j, path, {"name", "source", "flavor", "range", "target", "total", "one_to_one", "computed",
                            "definition", "total_label", "unique_label"});
    Mapping m;
    m.name = string(j, path, "name");
    m.source = string(j, path, "source");
    m.flavor = enumerated<MappingFlavor>(j, path, "flavor", mapping_flavor_from_string);
    if (const json& r = field(j, path, "range"); !r.is_null())
      m.value_range = range(r, path + "/range");
    m.target_set = nullable_string(j, path, "target").value_or("");
    m.total = boolean(j, path, "total");
    m.one_to_one = boolean(j, path, "one_to_one");
    m.computed = boolean(j, path, "computed");
    m.definition = string(j, path, "definition");
    m.total_label = string(j, path, "total_label");
    m.unique_label = string(j, path, "unique_label");
    return m;
  }

  SchemeSet set(const json& j, const std::string& path) {
    expect_object(j, path, {"name", "kind", "identifier", "mappings", "keys", "definition"});
    SchemeSet s;
    s.name = string(j, path, "name");
    s.kind = enumerated<SchemeSetKind>(j, path, "kind", scheme_set_kind_from_string);
    if (const json& x = field(j, path, "identifier"); !x.is_null())
      s.identifier = mapping(x, path + "/identifier");
    const json& ms = array(j, path, "mappings");
    for (std::size_t i = 0; i < ms.size(); ++i)
      s.mappings.push_back(mapping(ms[i], path + "/mappings/" + std::to_string(i)));
    const json& ks = array(j, path, "keys");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const std::string kp = path + "/keys/" + std::to_string(i);
      expect_object(ks[i], kp, {"label", "mappings", "implicit", "generated", "review"});
      s.keys.push_back({string(ks[i], kp, "label"), strings(ks[i], kp, "mappings"), boolean(ks[i], kp, "implicit"),
                        boolean(ks[i], kp, "generated"), boolean(ks[i], kp, "review")});
    }
    s.definition = string(j, path, "definition");
    return s;
  }

  Formula formula(const std::string& text, const std::string& path) const {
    auto parsed = parse_formula(text);
    if (!parsed.ok())
      fail(path, "bad formula: " + to_string(parsed.errors.front()));
    return *parsed.formula;
  }

  Constraint constraint(const json& j, const std::string& path) {
    expect_object(j, path, {"label", "kind", "subset", "superset", "set", "formula", "informal"});
    Constraint c;
    c.label = string(j, path, "label");
    const std::string kind = string(j, path, "kind");
    if (kind == "inclusion") {
      c.body = InclusionConstraint{string(j, path, "subset"), string(j, path, "superset")};
    } else if (kind == "tuple") {
      c.body = TupleConstraint{string(j, path, "set"), formula(string(j, path, "formula"), path + "/formula")};
    } else if (kind == "nonrelational") {
      NonrelationalConstraint n;
      if (auto text = nullable_string(j, path, "formula"))
        n.formula = formula(*text, path + "/formula");
      n.informal = string(j, path, "informal");
      c.body = std::move(n);
    } else {
      fail(path + "/kind", "unknown constraint kind '" + kind + "'");
    }
    return c;
  }

  TranslationReport report(const json& j, const std::string& path) {
    expect_object(j, path, {"compulsory_counting", "conventions", "tally", "steps", "diagnostics", "questions",
                            "actions"});
    TranslationReport r;
    r.compulsory_counting =
        enumerated<CompulsoryCounting>(j, path, "compulsory_counting", compulsory_counting_from_string);
    const json& steps = array(j, path, "steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string sp = path + "/steps/" + std::to_string(i);
      expect_object(steps[i], sp, {"kind", "source", "produced"});
      r.steps.push_back({enumerated<StepKind>(steps[i], sp, "kind", step_kind_from_string),
                         string(steps[i], sp, "source"), string(steps[i], sp, "produced")});
    }
    r.tally = tally_steps(r.steps);
    const json& diags = array(j, path, "diagnostics");
    for (std::size_t i = 0; i < diags.size(); ++i) {
      const std::string dp = path + "/diagnostics/" + std::to_string(i);
      expect_object(diags[i], dp, {"severity", "code", "element", "message"});
      r.diagnostics.push_back({enumerated<Severity>(diags[i], dp, "severity", severity_from_string),
                               string(diags[i], dp, "code"), string(diags[i], dp, "message"),
                               string(diags[i], dp, "element")});
    }
    const json& qs = array(j, path, "questions");
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const std::string qp = path + "/questions/" + std::to_string(i);
      expect_object(qs[i], qp, {"kind", "key", "prompt", "answer", "origin"});
      r.questions.push_back({enumerated<QuestionKind>(qs[i], qp, "kind", question_kind_from_string),
                             string(qs[i], qp, "key"), string(qs[i], qp, "prompt"),
                             nullable_string(qs[i], qp, "answer"),
                             enumerated<AnswerOrigin>(qs[i], qp, "origin", answer_origin_from_string)});
    }
    const json& as = array(j, path, "actions");
    for (std::size_t i = 0; i < as.size(); ++i) {
      const std::string ap = path + "/actions/" + std::to_string(i);
      const json& a = as[i];
      expect_object(a, ap, {"rule", "target", "description", "produced", "set", "mapping", "label", "host",
                            "codomain", "members", "one_to_one"});
      EnrichmentAction act;
      act.rule = enumerated<EnrichmentRule>(a, ap, "rule", rule_from_numeral);
      act.target = string(a, ap, "target");
      act.description = string(a, ap, "description");
      act.produced = strings(a, ap, "produced");
      act.set = string(a, ap, "set");
      act.mapping = string(a, ap, "mapping");
      act.label = string(a, ap, "label");
      act.host = string(a, ap, "host");
      act.codomain = string(a, ap, "codomain");
      act.members = strings(a, ap, "members");
      act.one_to_one = boolean(a, ap, "one_to_one");
      r.actions.push_back(std::move(act));
    }
    return r;
  }
};

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string emit_structured(const EmdmScheme& scheme, const TranslationReport* report) {
  ordered_json doc;
  doc["version"] = kStructuredVersion;
  doc["sets"] = ordered_json::array();
  for (const auto& s : scheme.sets)
    doc["sets"].push_back(set_json(s));
  doc["constraints"] = ordered_json::array();
  for (const auto& c : scheme.constraints)
    doc["constraints"].push_back(constraint_json(c));
  doc["provenance"] = ordered_json::array();
  for (const auto& p : scheme.provenance)
    doc["provenance"].push_back({{"element", p.element}, {"source", p.source}, {"kind", to_string(p.kind)}});
  if (report)
    doc["report"] = report_json(*report);
  return doc.dump(2) + "\n";
}

StructuredDocument load_structured(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw StructuredFormatError(std::string("malformed JSON: ") + e.what(), "", line, column);
  }

  Reader in;
  if (!doc.is_object())
    in.fail("", "document must be a JSON object");
  const auto version = doc.find("version");
  if (version == doc.end())
    in.fail("/version", "missing field 'version'");
  if (!version->is_number_integer() || version->get<long long>() != kStructuredVersion)
    in.fail("/version", "unsupported version " + version->dump() + " (expected " +
                            std::to_string(kStructuredVersion) + ")");
  in.expect_object(doc, "", {"version", "sets", "constraints", "provenance", "report"});

  StructuredDocument out;
  const json& sets = in.array(doc, "", "sets");
  for (std::size_t i = 0; i < sets.size(); ++i)
    out.scheme.sets.push_back(in.set(sets[i], "/sets/" + std::to_string(i)));
  const json& constraints = in.array(doc, "", "constraints");
  for (std::size_t i = 0; i < constraints.size(); ++i)
    out.scheme.constraints.push_back(in.constraint(constraints[i], "/constraints/" + std::to_string(i)));
  const json& provenance = in.array(doc, "", "provenance");
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    const std::string pp = "/provenance/" + std::to_string(i);
    in.expect_object(provenance[i], pp, {"element", "source", "kind"});
    out.scheme.provenance.push_back({in.string(provenance[i], pp, "element"), in.string(provenance[i], pp, "source"),
                                     in.enumerated<ProvenanceKind>(provenance[i], pp, "kind",
                                                                   provenance_kind_from_string)});
  }
  if (auto r = doc.find("report"); r != doc.end())
    out.report = in.report(*r, "/report");
  out.warnings = std::move(in.warnings);
  return out;
}

// Text report --------------------------------------------------------------------

std::string emit_report(const TranslationReport& report) {
  std::string out = "# compulsory counting: " + std::string(to_string(report.compulsory_counting)) + "\n";
  for (const auto& line : counting_conventions(report.compulsory_counting))
    out += "# " + line + "\n";
  out += "tally: " + to_string(report.tally) + "\n";
  out += "\nsteps:\n";
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& s = report.steps[i];
    out += "  " + std::to_string(i + 1) + " " + std::string(to_string(s.kind)) + " " + s.source + " => " +
           s.produced + "\n";
  }
  out += "\ndiagnostics:\n";
  for (const auto& d : report.diagnostics)
    out += "  " + to_string(d) + "\n";
  out += "\nquestions:\n";
  for (const auto& q : report.questions) {
    out += "  " + std::string(to_string(q.kind)) + " " + q.key + " (" + std::string(to_string(q.origin)) + ")";
    out += q.answer ? ": " + *q.answer : "";
    out += "\n";
  }
  out += "\nenrichment:\n";
  for (const auto& a : report.actions) {
    out += "  (" + std::string(numeral(a.rule)) + ") " + a.target + ": " + a.description;
    for (const auto& p : a.produced)
      if (p != a.target)
        out += " => " + p;
    out += "\n";
  }
  return out;
}

}  // namespace erc
