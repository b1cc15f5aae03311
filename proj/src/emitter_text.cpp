#include <array>
#include <utility>

#include "erc/emitter.hpp"

namespace erc {

namespace {

struct Spelling {
  const char* arrow;
  const char* bijection;
  const char* subset;
};

Spelling spelling(Glyphs glyphs) {
  if (glyphs == Glyphs::Unicode)
    return {"→", "↔", "⊆"};
  return {"->", "<->", "subset_of"};
}

std::string mapping_line(const Mapping& m, const Spelling& sp) {
  if (m.computed) {
    if (m.maps_to_set())
      return m.name + " : " + m.source + " " + sp.arrow + " " + m.target_set + " := " + m.definition;
    return m.name + " := " + m.definition;
  }
  const char* arrow = m.one_to_one ? sp.bijection : sp.arrow;
  std::string line;
  if (m.maps_to_set())
    line = m.name + " : " + m.source + " " + arrow + " " + m.target_set;
  else
    line = m.name + " " + arrow + " " + to_string(*m.value_range);
  if (m.total)
    line += ", total";
  return line;
}

std::string set_block(const EmdmScheme& scheme, const SchemeSet& set, Glyphs glyphs) {
  const Spelling sp = spelling(glyphs);
  std::string out = set.name;
  if (set.kind == SchemeSetKind::Computed) {
    out += " := " + set.definition;
  } else if (set.kind == SchemeSetKind::RelationshipDerived) {
    out += " = (";
    bool first = true;
    for (const auto& [role, target] : set.role_signature()) {
      out += (first ? "" : ", ") + role + " " + sp.arrow + " " + target;
      first = false;
    }
    out += ")";
  }
  out += "\n";

  for (const auto& c : scheme.constraints)
    if (const auto* inc = std::get_if<InclusionConstraint>(&c.body); inc && inc->subset == set.name)
      out += "  " + inc->subset + " " + sp.subset + " " + inc->superset + "\n";
  if (set.identifier)
    out += "  " + mapping_line(*set.identifier, sp) + "\n";
  // Value-valued mappings before structural functions, as in the figures.
  for (const auto& m : set.mappings)
    if (m.flavor != MappingFlavor::Role && m.flavor != MappingFlavor::StructuralFunction)
      out += "  " + mapping_line(m, sp) + "\n";
  for (const auto& m : set.mappings)
    if (m.flavor == MappingFlavor::StructuralFunction)
      out += "  " + mapping_line(m, sp) + "\n";
  for (const auto& k : set.keys)
    if (!k.implicit)
      out += "  " + format_key(k, glyphs) + " key\n";
  for (const auto& c : scheme.constraints)
    if (const auto* t = std::get_if<TupleConstraint>(&c.body); t && t->set == set.name)
      out += "  " + c.label + ": " + print_formula(t->formula, glyphs) + "\n";
  return out;
}

}  // namespace

std::string emit_text(const EmdmScheme& scheme, Glyphs glyphs) {
  const auto problems = check_scheme(scheme);
  if (has_errors(problems))
    throw EmitError("refusing to print an unsound scheme: " + to_string(problems.front()));

  std::vector<std::string> blocks;
  for (const auto& set : scheme.sets)
    blocks.push_back(set_block(scheme, set, glyphs));

  std::string trailing;
  for (const auto& c : scheme.constraints) {
    const auto* nr = std::get_if<NonrelationalConstraint>(&c.body);
    if (!nr)
      continue;
    trailing += c.label + ": " + (nr->formula ? print_formula(*nr->formula, glyphs) : "\"" + nr->informal + "\"") + "\n";
  }
  if (!trailing.empty())
    blocks.push_back(std::move(trailing));

  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i)
      out += "\n";
    out += blocks[i];
  }
  return out;
}

std::string normalize_glyphs(std::string_view text) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 13> table = {{
      {"→", "->"}, {"↔", "<->"}, {"•", "."}, {"∀", "forall "}, {"∈", "in"}, {"≠", "<>"}, {"≤", "<="},
      {"≥", ">="}, {"∧", "&"}, {"∨", "|"}, {"¬", "!"}, {"⇒", "=>"}, {"⊆", "subset_of"},
  }};
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool replaced = false;
    for (const auto& [glyph, ascii] : table) {
      if (text.substr(i).starts_with(glyph)) {
        out += ascii;
        i += glyph.size();
        replaced = true;
        break;
      }
    }
    if (!replaced)
      out += text[i++];
  }
  return out;
}

}  // namespace erc
