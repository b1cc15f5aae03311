#include <gtest/gtest.h>

#include <algorithm>

#include "census_oracle.hpp"
#include "erc/census.hpp"
#include "erc/ermodel.hpp"
#include "fixtures.hpp"

namespace erc {
namespace {

ObjectSet& set_named(ERModel& m, std::string_view name) {
  for (auto& d : m.diagrams)
    for (auto& s : d.sets)
      if (s.name == name)
        return s;
  throw std::runtime_error("no set " + std::string(name));
}

TEST(ErModel, GoldenModelIsValid) { EXPECT_TRUE(validate_model(testing::golden_model()).empty()); }

TEST(ErModel, EmptyModelIsValid) { EXPECT_TRUE(validate_model(ERModel{}).empty()); }

TEST(ErModel, DanglingRoleTargetIsOneError) {
  ERModel m = testing::golden_model();
  set_named(m, "ATTENDANCES").roles[1].target = "CLASES";
  const auto errors = validate_model(m);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].code, "unresolved-reference");
  EXPECT_NE(errors[0].message.find("CLASES"), std::string::npos);
}

TEST(ErModel, ValidationIsIdempotent) {
  ERModel m = testing::golden_model();
  set_named(m, "CLASSES").functions[0].target = "NOWHERE";
  const ERModel before = m;
  const auto first = validate_model(m);
  const auto second = validate_model(m);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, second);
  EXPECT_EQ(m, before);
}

TEST(ErModel, ClassifiesGoldenRestrictions) {
  const ERModel m = testing::golden_model();
  EXPECT_EQ(classify_restriction(*m.find_restriction("R28")), RestrictionClass::Uniqueness);
  EXPECT_EQ(classify_restriction(*m.find_restriction("R38")), RestrictionClass::Other);
  EXPECT_EQ(classify_restriction(*m.find_restriction("R01")), RestrictionClass::Range);
  EXPECT_EQ(classify_restriction(*m.find_restriction("R02")), RestrictionClass::Range);
  EXPECT_EQ(classify_restriction(*m.find_restriction("R20")), RestrictionClass::Compulsory);
}

TEST(ErModel, GoldenRestrictionCensus) {
  const ERModel m = testing::golden_model();
  std::size_t range = 0, compulsory = 0, unique = 0, other = 0, cardinality = 0;
  for (const auto& r : m.restrictions) {
    switch (classify_restriction(r)) {
      case RestrictionClass::Range: ++range; break;
      case RestrictionClass::Compulsory: ++compulsory; break;
      case RestrictionClass::Uniqueness: ++unique; break;
      case RestrictionClass::Other: ++other; break;
      case RestrictionClass::Inclusion: break;
    }
    cardinality += std::holds_alternative<CardinalityBody>(r.body);
  }
  EXPECT_EQ(range, 19u);
  EXPECT_EQ(cardinality, 8u);
  EXPECT_EQ(compulsory, 8u);
  EXPECT_EQ(unique, 9u);
  EXPECT_EQ(other, 5u);
}

TEST(ErModel, TupleRouting) {
  const ERModel m = testing::golden_model();
  EXPECT_TRUE(is_tuple_restriction(*m.find_restriction("R37")));
  for (const char* label : {"R38", "R39", "R40", "R41"}) {
    EXPECT_FALSE(is_tuple_restriction(*m.find_restriction(label))) << label;
    EXPECT_TRUE(is_nonrelational_restriction(*m.find_restriction(label))) << label;
  }
  EXPECT_FALSE(is_nonrelational_restriction(*m.find_restriction("R28")));
}

TEST(ErModel, GoldenCensusMatchesOracle) {
  const ERModel m = testing::golden_model();
  const auto oracle = testing::brute_force_census(m, true);
  EXPECT_EQ(oracle.E, 5u);
  EXPECT_EQ(oracle.R, 3u);
  EXPECT_EQ(oracle.RA, 6u);
  EXPECT_EQ(oracle.SF, 1u);
  EXPECT_EQ(oracle.EN, 11u);
  EXPECT_EQ(oracle.CR, 17u);
  EXPECT_EQ(oracle.U, 4u);
  EXPECT_EQ(oracle.CU, 5u);
  EXPECT_EQ(oracle.TR, 1u);
  EXPECT_EQ(oracle.NR, 4u);
  EXPECT_EQ(oracle.total(), 57u);

  const Census c = take_census(m, CompulsoryCounting::PerMapping);
  EXPECT_EQ(c.tally.total(), oracle.total());
  EXPECT_EQ(c.step_elements.size(), oracle.total());
  EXPECT_EQ(take_census(m, CompulsoryCounting::PerRestriction).tally.compulsory, 8u);
}

TEST(ErModel, RangeFormatting) {
  EXPECT_EQ(to_string(Range::interval(Bound::integer("1"), Bound::integer("10^4"))), "[1, 10^4]");
  EXPECT_EQ(to_string(Range::interval(Bound::date("01/10/2010"), Bound::function("SysDate()"))),
            "[01/10/2010, SysDate()]");
  EXPECT_EQ(to_string(Range::ascii(255)), "ASCII(255)");
  EXPECT_EQ(to_string(Range::nat(5)), "NAT(5)");
  EXPECT_EQ(Bound::integer("10^4").value, 10000);
  EXPECT_EQ(Bound::date("01/10/2010").value, 20101001);
  EXPECT_THROW(Bound::integer("ten"), std::invalid_argument);
  EXPECT_THROW(Bound::date("32/01/2010"), std::invalid_argument);
}

TEST(ErModel, FunctionBoundsAreKeptVerbatim) {
  const ERModel m = testing::golden_model();
  const auto& range = std::get<RangeBody>(m.find_restriction("R12")->body).range;
  EXPECT_EQ(range.hi.kind, Bound::Kind::Function);
  EXPECT_EQ(range.hi.text, "SysDate()");
}

TEST(ErModel, InvertedIntervalIsReported) {
  const ERModel m = testing::parse_or_die(
      "diagram D { entity A { attr v } }\n"
      "restriction R1 on A compulsory v\n");
  ERModel bad = m;
  bad.restrictions.push_back({"R2", "A", RangeBody{"v", Range::interval(Bound::integer("9"), Bound::integer("1"))}, {}});
  const auto errors = validate_model(bad);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].element, "R2");
}

}  // namespace
}  // namespace erc
