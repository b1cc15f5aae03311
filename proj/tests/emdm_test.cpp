#include <gtest/gtest.h>

#include "erc/emdm.hpp"
#include "erc/translator.hpp"
#include "fixtures.hpp"

namespace erc {
namespace {

EmdmScheme golden_scheme() {
  const auto result = translate(testing::golden_model());
  if (!result.scheme)
    throw std::runtime_error("golden model did not translate");
  return *result.scheme;
}

bool has_code(const std::vector<Diagnostic>& ds, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

SchemeSet relationship(std::vector<std::string> roles) {
  SchemeSet s;
  s.name = "R";
  s.kind = SchemeSetKind::RelationshipDerived;
  for (auto& r : roles) {
    Mapping m;
    m.name = r;
    m.source = "R";
    m.target_set = "T";
    m.flavor = MappingFlavor::Role;
    s.mappings.push_back(m);
  }
  return s;
}

TEST(Emdm, StructuralKeys) {
  const EmdmScheme s = golden_scheme();
  EXPECT_EQ(structural_key(*s.find_set("SCHEDULES")).mappings, (std::vector<std::string>{"Room", "Competence"}));
  EXPECT_EQ(structural_key(*s.find_set("ATTENDANCES")).mappings, (std::vector<std::string>{"Student", "Class"}));
  EXPECT_EQ(structural_key(relationship({"a", "b", "c"})).mappings, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_THROW(structural_key(*s.find_set("STUDENTS")), std::invalid_argument);
}

TEST(Emdm, ImplicitKeys) {
  const EmdmScheme s = golden_scheme();
  const SchemeSet& att = *s.find_set("ATTENDANCES");
  const SchemeSet& sch = *s.find_set("SCHEDULES");
  EXPECT_TRUE(is_implicit_key(*att.find_key("R35"), att));
  EXPECT_FALSE(is_implicit_key(*sch.find_key("R33"), sch));
  EXPECT_FALSE(is_implicit_key(Key{"K", {"Room"}}, sch));
  EXPECT_TRUE(is_implicit_key(Key{"K", {"Competence", "Room"}}, sch));
  EXPECT_FALSE(is_implicit_key(Key{"K", {"SSN", "Name"}}, *s.find_set("STUDENTS")));
}

TEST(Emdm, FormatKey) {
  const Key k{"R42", {"Room", "Competence"}};
  EXPECT_EQ(format_key(k), "R42: Room . Competence");
  EXPECT_EQ(format_key(k, Glyphs::Unicode), "R42: Room • Competence");
}

TEST(Emdm, GoldenSchemeIsSound) { EXPECT_TRUE(check_scheme(golden_scheme()).empty()); }

TEST(Emdm, EmptySchemeIsSound) { EXPECT_TRUE(check_scheme(EmdmScheme{}).empty()); }

TEST(Emdm, MissingRoleCodomain) {
  EmdmScheme s = golden_scheme();
  s.find_set("SCHEDULES")->find_mapping("Room")->target_set = "HALLS";
  const auto ds = check_scheme(s);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "unresolved-codomain");
  EXPECT_EQ(ds[0].severity, Severity::Error);
}

TEST(Emdm, KeyInvariants) {
  EmdmScheme s = golden_scheme();
  SchemeSet& classes = *s.find_set("CLASSES");
  classes.keys.push_back({"R90", {"Date"}});
  EXPECT_TRUE(has_code(check_scheme(s), "short-key"));
  classes.keys.back() = {"R90", {"Schedule", "Date"}};
  EXPECT_TRUE(has_code(check_scheme(s), "duplicate-key-mapping-set"));
  classes.keys.back() = {"R90", {"Date", "Ghost"}};
  EXPECT_TRUE(has_code(check_scheme(s), "unknown-key-mapping"));
  classes.keys.back() = {"R32", {"Date", "x"}};
  EXPECT_TRUE(has_code(check_scheme(s), "duplicate-label"));
}

TEST(Emdm, IdentifierMustBeOneToOneAndTotal) {
  EmdmScheme s = golden_scheme();
  s.find_set("ROOMS")->identifier->total = false;
  EXPECT_TRUE(has_errors(check_scheme(s)));
}

TEST(Emdm, TupleConstraintsMustTypeCheck) {
  EmdmScheme s = golden_scheme();
  for (auto& c : s.constraints)
    if (auto* t = std::get_if<TupleConstraint>(&c.body))
      t->formula = *parse_formula("(forall x in SCHEDULES)(Grade(x) < EndH(x))").formula;
  EXPECT_TRUE(has_code(check_scheme(s), "unknown-mapping"));
}

TEST(Emdm, ProvenanceCoversEveryElement) {
  EmdmScheme s = golden_scheme();
  std::erase_if(s.provenance, [](const ProvenanceEntry& p) { return p.element == "mapping:STUDENTS.Name"; });
  EXPECT_TRUE(has_code(check_scheme(s), "missing-provenance"));
}

TEST(Emdm, NextLabel) {
  EXPECT_EQ(next_label(EmdmScheme{}), "R01");
  EmdmScheme s = golden_scheme();
  // R42 is already taken by the generated structural key.
  EXPECT_EQ(next_label(s), "R43");
}

TEST(Emdm, KindStringsRoundTrip) {
  for (auto k : {SchemeSetKind::EntityDerived, SchemeSetKind::RelationshipDerived, SchemeSetKind::Computed})
    EXPECT_EQ(scheme_set_kind_from_string(to_string(k)), k);
  for (auto f : {MappingFlavor::Attribute, MappingFlavor::Role, MappingFlavor::StructuralFunction,
                 MappingFlavor::ObjectIdentifier, MappingFlavor::EnrichmentGenerated})
    EXPECT_EQ(mapping_flavor_from_string(to_string(f)), f);
  for (auto p : {ProvenanceKind::Translated, ProvenanceKind::Absorbed, ProvenanceKind::Generated,
                 ProvenanceKind::Consumed})
    EXPECT_EQ(provenance_kind_from_string(to_string(p)), p);
  EXPECT_FALSE(mapping_flavor_from_string("arrow").has_value());
}

}  // namespace
}  // namespace erc
