#include <gtest/gtest.h>

#include <chrono>

#include "census_oracle.hpp"
#include "erc/census.hpp"
#include "erc/generator.hpp"
#include "erc/translator.hpp"
#include "fixtures.hpp"

namespace erc {
namespace {

void expect_all_pass(const TranslationResult& result, const std::string& tag) {
  for (const auto& p : check_properties(result))
    EXPECT_TRUE(p.passed) << tag << " " << p.name << ": " << p.detail;
}

TEST(Properties, GoldenFixture) {
  const auto result = translate(testing::golden_model());
  const auto checks = check_properties(result);
  ASSERT_EQ(checks.size(), 4u);
  EXPECT_EQ(checks[0].name, "linearity");
  EXPECT_EQ(checks[1].name, "soundness");
  EXPECT_EQ(checks[2].name, "completeness");
  EXPECT_EQ(checks[3].name, "optimality");
  expect_all_pass(result, "golden");
}

TEST(Properties, GeneratedModelsAgreeWithOracle) {
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const ERModel model = generate_model(seed);
    ASSERT_TRUE(validate_model(model).empty()) << "seed " << seed;
    const auto result = translate(model);
    ASSERT_TRUE(result.scheme) << "seed " << seed;
    const auto oracle = testing::brute_force_census(result.effective_model, true);
    EXPECT_EQ(result.report.tally.total(), oracle.total()) << "seed " << seed;
    EXPECT_EQ(result.report.tally.compulsory, oracle.CR) << "seed " << seed;
    EXPECT_EQ(result.report.tally.tuple, oracle.TR) << "seed " << seed;
    EXPECT_EQ(result.report.steps.size(), oracle.total()) << "seed " << seed;
    expect_all_pass(result, "seed " + std::to_string(seed));
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count(), 30);
}

TEST(Properties, PerRestrictionCounting) {
  TranslationOptions options;
  options.compulsory_counting = CompulsoryCounting::PerRestriction;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto result = translate(generate_model(seed), options);
    const auto oracle = testing::brute_force_census(result.effective_model, false);
    EXPECT_EQ(result.report.tally.total(), oracle.total()) << "seed " << seed;
    expect_all_pass(result, "seed " + std::to_string(seed));
  }
}

TEST(Properties, GeneratorStaysWithinLimits) {
  const GeneratorLimits limits;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const ERModel m = generate_model(seed, limits);
    std::size_t attributes = 0;
    for (const auto* s : m.sets())
      attributes += s->attributes.size();
    EXPECT_LE(m.sets().size(), limits.max_sets);
    EXPECT_LE(attributes, limits.max_attributes);
    EXPECT_LE(m.restrictions.size(), limits.max_restrictions);
  }
  EXPECT_EQ(generate_model(7), generate_model(7));
}

TEST(Properties, StepsGrowExactlyWithModelSize) {
  for (std::size_t size : {10u, 100u, 1000u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ERModel m = generate_model_of_size(seed, size);
      const auto result = translate(m);
      ASSERT_TRUE(result.scheme);
      EXPECT_EQ(take_census(result.effective_model, CompulsoryCounting::PerMapping).tally.total(), size);
      const auto oracle = testing::brute_force_census(result.effective_model, true);
      EXPECT_EQ(result.report.steps.size(), oracle.total()) << size << " seed " << seed;
      EXPECT_EQ(result.report.steps.size(), size) << size << " seed " << seed;
    }
  }
}

TEST(Properties, PropertiesFailWithoutScheme) {
  ERModel m = testing::golden_model();
  m.diagrams[0].sets[1].name = "STUDENTS";
  const auto result = translate(m);
  for (const auto& p : check_properties(result))
    EXPECT_FALSE(p.passed) << p.name;
}

}  // namespace
}  // namespace erc
