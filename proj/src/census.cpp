#include "erc/census.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace erc {

Census take_census(const ERModel& model, CompulsoryCounting counting) {
  Census c;
  Tally& t = c.tally;
  auto element = [&](std::string id, std::size_t& counter) {
    ++counter;
    c.step_elements.push_back(id);
    c.input_elements.push_back(std::move(id));
  };

  for (const auto* s : model.sets()) {
    switch (s->kind) {
      case SetKind::Entity: element(ids::set(s->name), t.entities); break;
      case SetKind::Computed: element(ids::set(s->name), t.computed_sets); break;
      case SetKind::Relationship: element(ids::set(s->name), t.relationships); break;
    }
    for (const auto& r : s->roles)
      element(ids::role(s->name, r.name), t.roles);
    for (const auto& f : s->functions)
      element(ids::function(s->name, f.name), t.functions);
    for (const auto& a : s->attributes)
      element(ids::attribute(s->name, a.name), t.ellipses);
    for (const auto& sup : s->included_in)
      element(ids::header_inclusion(s->name, sup), t.inclusions);
  }

  for (const auto& r : model.restrictions) {
    const std::string rid = ids::restriction(r.label);
    switch (classify_restriction(r)) {
      case RestrictionClass::Inclusion:
        element(rid, t.inclusions);
        break;
      case RestrictionClass::Range:
        c.input_elements.push_back(rid);  // consumed, no step
        break;
      case RestrictionClass::Compulsory:
        if (counting == CompulsoryCounting::PerMapping) {
          for (const auto& m : std::get<CompulsoryBody>(r.body).mappings)
            element(ids::restriction_member(r.label, m), t.compulsory);
        } else {
          element(rid, t.compulsory);
        }
        break;
      case RestrictionClass::Uniqueness:
        element(rid, std::get<UniquenessBody>(r.body).mappings.size() == 1 ? t.unique : t.concatenated);
        break;
      case RestrictionClass::Other:
        element(rid, is_tuple_restriction(r) ? t.tuple : t.nonrelational);
        break;
    }
  }
  return c;
}

namespace {

std::string sample(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < 5; ++i)
    out += (i ? ", " : "") + items[i];
  if (items.size() > 5)
    out += ", ... (" + std::to_string(items.size()) + " in all)";
  return out;
}

}  // namespace

std::vector<PropertyCheck> check_properties(const TranslationResult& result) {
  std::vector<PropertyCheck> out;
  if (!result.scheme) {
    std::string why = "no scheme was produced";
    for (const auto& d : result.report.diagnostics)
      if (d.severity == Severity::Error) {
        why += ": " + to_string(d);
        break;
      }
    for (const char* name : {"linearity", "soundness", "completeness", "optimality"})
      out.push_back({name, false, why});
    return out;
  }
  const TranslationReport& report = result.report;
  const Census census = take_census(result.effective_model, report.compulsory_counting);

  {
    const bool ok = report.tally == census.tally && report.steps.size() == census.tally.total();
    out.push_back({"linearity", ok,
                   "steps " + std::to_string(report.steps.size()) + ", census " + to_string(census.tally)});
  }
  {
    const auto problems = check_scheme(*result.scheme);
    std::string detail = std::to_string(problems.size()) + " scheme diagnostics";
    if (!problems.empty())
      detail += "; first: " + to_string(problems.front());
    out.push_back({"soundness", problems.empty(), detail});
  }
  {
    std::set<std::string> sources;
    for (const auto& p : result.scheme->provenance)
      sources.insert(p.source);
    std::vector<std::string> missing;
    for (const auto& id : census.input_elements)
      if (!sources.contains(id))
        missing.push_back(id);
    out.push_back({"completeness", missing.empty(),
                   missing.empty() ? std::to_string(census.input_elements.size()) + " input elements traced"
                                   : "untraced: " + sample(missing)});
  }
  {
    std::map<std::string, std::size_t> uses;
    for (const auto& s : report.steps)
      ++uses[s.source];
    std::vector<std::string> wrong;
    std::set<std::string> expected(census.step_elements.begin(), census.step_elements.end());
    for (const auto& id : census.step_elements)
      if (uses[id] != 1)
        wrong.push_back(id + " x" + std::to_string(uses[id]));
    for (const auto& [id, n] : uses)
      if (!expected.contains(id))
        wrong.push_back(id + " (not an input element)");
    out.push_back({"optimality", wrong.empty(),
                   wrong.empty() ? "each of " + std::to_string(expected.size()) + " elements translated once"
                                 : "miscounted: " + sample(wrong)});
  }
  return out;
}

}  // namespace erc
