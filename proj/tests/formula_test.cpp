#include <gtest/gtest.h>

#include "erc/formula.hpp"
#include "fixtures.hpp"

namespace erc {
namespace {

Formula parse_ok(std::string_view text) {
  auto r = parse_formula(text);
  EXPECT_TRUE(r.ok()) << (r.errors.empty() ? "" : to_string(r.errors.front()));
  return *r.formula;
}

const Formula& formal_of(const ERModel& m, std::string_view label) {
  const auto* r = m.find_restriction(label);
  return *std::get<OtherBody>(r->body).formal;
}

TEST(Formula, ParsesSingleQuantifier) {
  const Formula f = parse_ok("(forall x in SCHEDULES)(StartH(x) < EndH(x))");
  ASSERT_EQ(f.kind(), Formula::Kind::Forall);
  EXPECT_EQ(f.variable(), "x");
  EXPECT_EQ(f.domain(), "SCHEDULES");
  const Formula expected_body = Formula::compare(CompareOp::Less, Term::apply("StartH", Term::variable("x")),
                                                 Term::apply("EndH", Term::variable("x")));
  EXPECT_EQ(f.body(), expected_body);
}

TEST(Formula, ReflexiveTautology) {
  const Formula f = parse_ok("(forall x in S)(f(x) = f(x))");
  EXPECT_EQ(f.body().op(), CompareOp::Equal);
  EXPECT_EQ(f.body().lhs(), f.body().rhs());
}

TEST(Formula, NestedQuantifiersOverTwoSets) {
  const Formula f = parse_ok("(forall x in STUDENTS)(forall y in TEACHERS)(SSN(x) <> SSN(y))");
  ASSERT_EQ(f.kind(), Formula::Kind::Forall);
  EXPECT_EQ(f.domain(), "STUDENTS");
  ASSERT_EQ(f.body().kind(), Formula::Kind::Forall);
  EXPECT_EQ(f.body().domain(), "TEACHERS");
  EXPECT_EQ(f.body().body().op(), CompareOp::NotEqual);
}

TEST(Formula, SugarDesugarsToNestedQuantifiers) {
  const Formula sugar = parse_ok("(forall x, y in S)(a(x) = a(y))");
  const Formula nested = parse_ok("(forall x in S)(forall y in S)(a(x) = a(y))");
  EXPECT_EQ(sugar, nested);
  EXPECT_EQ(print_formula(nested), "(forall x, y in S)(a(x) = a(y))");
}

TEST(Formula, QuantifierCounts) {
  const ERModel m = testing::golden_model();
  EXPECT_EQ(quantifier_count(formal_of(m, "R37")), 1u);
  EXPECT_EQ(quantifier_count(formal_of(m, "R38")), 2u);
  EXPECT_EQ(quantifier_count(formal_of(m, "R39")), 4u);
  EXPECT_EQ(quantifier_count(formal_of(m, "R40")), 4u);
  EXPECT_EQ(quantifier_count(formal_of(m, "R41")), 2u);

  const auto vars = quantified_variables(formal_of(m, "R39"));
  ASSERT_EQ(vars.size(), 4u);
  EXPECT_EQ(vars[0], std::make_pair(std::string("u"), std::string("ATTENDANCES")));
  EXPECT_EQ(vars[3], std::make_pair(std::string("y"), std::string("SCHEDULES")));
}

TEST(Formula, ClosedFormulasHaveNoFreeVariables) {
  const ERModel m = testing::golden_model();
  for (const char* label : {"R37", "R38", "R39", "R40", "R41"})
    EXPECT_TRUE(free_variables(formal_of(m, label)).empty()) << label;
}

TEST(Formula, GoldenFormulasAreAPrintParseFixpoint) {
  const ERModel m = testing::golden_model();
  for (const char* label : {"R37", "R38", "R39", "R40", "R41"}) {
    const Formula& f = formal_of(m, label);
    const std::string printed = print_formula(f);
    const Formula again = parse_ok(printed);
    EXPECT_EQ(again, f) << label;
    EXPECT_EQ(print_formula(again), printed) << label;
  }
}

TEST(Formula, UnicodeGlyphsAreSynonyms) {
  const Formula ascii = parse_ok("(forall x in STUDENTS)(forall y in TEACHERS)(SSN(x) <> SSN(y))");
  const Formula glyphs = parse_ok("(∀x ∈ STUDENTS)(∀y ∈ TEACHERS)(SSN(x) ≠ SSN(y))");
  EXPECT_EQ(ascii, glyphs);
  EXPECT_EQ(print_formula(ascii, Glyphs::Unicode), "(∀x ∈ STUDENTS)(∀y ∈ TEACHERS)(SSN(x) ≠ SSN(y))");
}

TEST(Formula, PrecedenceAndParentheses) {
  const Formula f = parse_ok("(forall x in S)(a(x) = 1 | a(x) = 2 & !(b(x) >= 'z') => c(x) <= 3)");
  const Formula& body = f.body();
  ASSERT_EQ(body.kind(), Formula::Kind::Implies);
  ASSERT_EQ(body.left().kind(), Formula::Kind::Or);
  EXPECT_EQ(body.left().right().kind(), Formula::Kind::And);
  EXPECT_EQ(parse_ok(print_formula(f)), f);

  const Formula grouped = parse_ok("(forall x in S)((a(x) = 1 | a(x) = 2) & b(x) = 3)");
  EXPECT_EQ(grouped.body().kind(), Formula::Kind::And);
  EXPECT_EQ(parse_ok(print_formula(grouped)), grouped);
}

TEST(Formula, AppliedMappingsInOrder) {
  const ERModel m = testing::golden_model();
  const auto names = applied_mappings(formal_of(m, "R38"));
  ASSERT_GE(names.size(), 2u);
  EXPECT_EQ(names[0], "Teacher");
  EXPECT_EQ(names[1], "Competence");
}

TEST(Formula, UnboundVariableIsAnError) {
  const auto r = parse_formula("(forall x in S)(a(y) = 1)");
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].message.find("unbound variable 'y'"), std::string::npos);
  EXPECT_EQ(r.errors[0].line, 1);
  EXPECT_EQ(r.errors[0].column, 19);
}

TEST(Formula, ErrorPositionsAreShiftedByOrigin) {
  const auto r = parse_formula("(forall x in S)(a(x) = )", {7, 10});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.errors[0].line, 7);
  EXPECT_EQ(r.errors[0].column, 10 + 23);
}

TEST(Formula, RejectsMalformedInput) {
  for (const char* bad : {"", "(forall x S)(a(x) = 1)", "(forall x in S) a(x) = 1", "(forall x in S)(a(x) = 1",
                          "(forall x in S)(forall x in S)(a(x) = 1)", "(forall x in S)(a(x) = 99999999999999999999)",
                          "(forall x in S)(a(x) 1)"}) {
    const auto r = parse_formula(bad);
    EXPECT_FALSE(r.ok()) << bad;
    EXPECT_EQ(r.errors.size(), 1u) << bad;
  }
}

TEST(Formula, ParsingIsDeterministic) {
  const std::string text = "(forall u, v in A)(forall x in B)(f(u) = f(v) & x = g(u) => h(x) <> 'n')";
  EXPECT_EQ(parse_ok(text), parse_ok(text));
}

}  // namespace
}  // namespace erc
