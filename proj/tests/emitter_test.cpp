#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "erc/emitter.hpp"
#include "erc/generator.hpp"
#include "erc/translator.hpp"
#include "fixtures.hpp"

namespace erc {
namespace {

const TranslationResult& golden() {
  static const TranslationResult result = translate(testing::golden_model());
  return result;
}

std::string block(const std::string& text, std::string_view header) {
  const auto start = text.find(std::string(header) + "\n");
  if (start == std::string::npos)
    return {};
  const auto end = text.find("\n\n", start);
  return text.substr(start, end == std::string::npos ? std::string::npos : end - start + 1);
}

TEST(TextEmitter, MatchesGoldenFile) {
  EXPECT_EQ(emit_text(*golden().scheme), testing::read_file(testing::data_path("teaching.golden.txt")));
}

TEST(TextEmitter, StudentsBlock) {
  EXPECT_EQ(block(emit_text(*golden().scheme), "STUDENTS"),
            "STUDENTS\n"
            "  x <-> NAT(5), total\n"
            "  SSN <-> [1000101000000, 8991231999999], total\n"
            "  Name -> ASCII(255), total\n");
}

TEST(TextEmitter, SchedulesBlockHasNoGeneratedKey) {
  const std::string b = block(emit_text(*golden().scheme), "SCHEDULES = (Room -> ROOMS, Competence -> COMPETENCES)");
  EXPECT_NE(b.find("  R33: Room . Weekday . StartH key\n"), std::string::npos);
  EXPECT_NE(b.find("  R37: (forall x in SCHEDULES)(StartH(x) < EndH(x))\n"), std::string::npos);
  EXPECT_EQ(b.find("R42"), std::string::npos);
}

TEST(TextEmitter, UnicodeNormalizesToGolden) {
  const std::string unicode = emit_text(*golden().scheme, Glyphs::Unicode);
  EXPECT_NE(unicode.find("SSN ↔ [1000101000000, 8991231999999], total"), std::string::npos);
  EXPECT_NE(unicode.find("R32: Date • Schedule key"), std::string::npos);
  EXPECT_NE(unicode.find("R41: (∀x ∈ STUDENTS)(∀y ∈ TEACHERS)(SSN(x) ≠ SSN(y))"), std::string::npos);
  EXPECT_EQ(normalize_glyphs(unicode), testing::read_file(testing::data_path("teaching.golden.txt")));
}

TEST(TextEmitter, EmptyScheme) { EXPECT_EQ(emit_text(EmdmScheme{}), ""); }

TEST(TextEmitter, RefusesUnsoundScheme) {
  EmdmScheme s = *golden().scheme;
  s.find_set("CLASSES")->find_mapping("Schedule")->target_set = "NOWHERE";
  EXPECT_THROW(emit_text(s), EmitError);
}

TEST(TextEmitter, UnformalizedConstraintsPrintTheirText) {
  const ERModel m = testing::parse_or_die(
      "diagram D { entity A { attr v } }\nrestriction R1 other informal \"v is sensible\"\n");
  const auto result = translate(m);
  const std::string text = emit_text(*result.scheme);
  EXPECT_NE(text.find("\n\nR1: \"v is sensible\"\n"), std::string::npos);
}

TEST(TextEmitter, Deterministic) { EXPECT_EQ(emit_text(*golden().scheme), emit_text(*golden().scheme)); }

TEST(StructuredEmitter, GoldenRoundTrip) {
  const std::string doc = emit_structured(*golden().scheme, &golden().report);
  const StructuredDocument loaded = load_structured(doc);
  EXPECT_EQ(loaded.scheme, *golden().scheme);
  ASSERT_TRUE(loaded.report.has_value());
  EXPECT_EQ(*loaded.report, golden().report);
  EXPECT_TRUE(loaded.warnings.empty());
  EXPECT_EQ(emit_structured(loaded.scheme, &*loaded.report), doc);
}

TEST(StructuredEmitter, CarriesGeneratedKey) {
  const auto doc = nlohmann::json::parse(emit_structured(*golden().scheme));
  EXPECT_EQ(doc.at("version"), kStructuredVersion);
  const nlohmann::json* schedules = nullptr;
  for (const auto& s : doc.at("sets"))
    if (s.at("name") == "SCHEDULES")
      schedules = &s;
  ASSERT_TRUE(schedules);
  bool found = false;
  for (const auto& k : schedules->at("keys")) {
    if (k.at("label") != "R42")
      continue;
    found = true;
    EXPECT_EQ(k.at("mappings"), nlohmann::json::array({"Room", "Competence"}));
    EXPECT_EQ(k.at("implicit"), true);
    EXPECT_EQ(k.at("generated"), true);
    EXPECT_EQ(k.at("review"), true);
  }
  EXPECT_TRUE(found);
}

TEST(StructuredEmitter, EmptyRoundTrip) {
  const StructuredDocument loaded = load_structured(emit_structured(EmdmScheme{}));
  EXPECT_EQ(loaded.scheme, EmdmScheme{});
  EXPECT_FALSE(loaded.report.has_value());
}

TEST(StructuredEmitter, FuzzedRoundTrips) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto result = translate(generate_model(seed));
    ASSERT_TRUE(result.scheme) << "seed " << seed;
    const StructuredDocument loaded = load_structured(emit_structured(*result.scheme, &result.report));
    EXPECT_EQ(loaded.scheme, *result.scheme) << "seed " << seed;
    EXPECT_EQ(*loaded.report, result.report) << "seed " << seed;
  }
}

TEST(StructuredEmitter, RejectsUnknownVersion) {
  auto doc = nlohmann::json::parse(emit_structured(*golden().scheme));
  doc["version"] = 99;
  try {
    load_structured(doc.dump());
    FAIL() << "version 99 accepted";
  } catch (const StructuredFormatError& e) {
    EXPECT_EQ(e.path(), "/version");
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  doc.erase("version");
  EXPECT_THROW(load_structured(doc.dump()), StructuredFormatError);
}

TEST(StructuredEmitter, WarnsOnUnknownFields) {
  auto doc = nlohmann::json::parse(emit_structured(*golden().scheme));
  doc["comment"] = "hand edited";
  doc["sets"][0]["colour"] = "blue";
  const StructuredDocument loaded = load_structured(doc.dump());
  EXPECT_EQ(loaded.scheme, *golden().scheme);
  EXPECT_EQ(loaded.warnings.size(), 2u);
}

TEST(StructuredEmitter, ReportsMalformedDocuments) {
  try {
    load_structured("{\n  \"version\": 1,\n  \"sets\": [\n");
    FAIL() << "truncated document accepted";
  } catch (const StructuredFormatError& e) {
    EXPECT_GE(e.line(), 3);
  }
  auto doc = nlohmann::json::parse(emit_structured(*golden().scheme));
  doc["sets"][1]["kind"] = "blob";
  try {
    load_structured(doc.dump());
    FAIL() << "bad set kind accepted";
  } catch (const StructuredFormatError& e) {
    EXPECT_EQ(e.path(), "/sets/1/kind");
  }
}

TEST(Report, ListsSectionsAndTally) {
  const std::string report = emit_report(golden().report);
  EXPECT_NE(report.find("S=8 (E=5 CS=0 R=3) A=18 (RA=6 SF=1 EN=11) C=31 (NR=4 IC=0 CR=17 U=4 CU=5 TR=1) total=57"),
            std::string::npos);
  EXPECT_NE(report.find("R42"), std::string::npos);
  EXPECT_NE(report.find("absorbed-key"), std::string::npos);
}

}  // namespace
}  // namespace erc
