#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "erc/cli.hpp"
#include "erc/emitter.hpp"
#include "fixtures.hpp"

namespace erc {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = {}) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Outcome r;
  r.code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("erc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  const std::string golden_ = testing::data_path("teaching.erdm");
  fs::path dir_;
};

TEST_F(Cli, TranslateGoldenToStdout) {
  const Outcome r = run({"translate", golden_});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, testing::read_file(testing::data_path("teaching.golden.txt")));
}

TEST_F(Cli, TranslateFromStdinInUnicode) {
  const Outcome r = run({"translate", "-", "--unicode"}, testing::read_file(golden_));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x ↔ NAT(5), total"), std::string::npos);
  EXPECT_EQ(normalize_glyphs(r.out), testing::read_file(testing::data_path("teaching.golden.txt")));
}

TEST_F(Cli, TranslateWritesAllOutputs) {
  const Outcome r = run({"translate", golden_, "-o", path("s.txt"), "--structured", path("s.json"), "--report",
                     path("report.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(testing::read_file(path("s.txt")), testing::read_file(testing::data_path("teaching.golden.txt")));
  const auto doc = load_structured(testing::read_file(path("s.json")));
  EXPECT_TRUE(doc.scheme.find_set("SCHEDULES")->find_key("R42"));
  EXPECT_NE(testing::read_file(path("report.txt")).find("total=57"), std::string::npos);
}

TEST_F(Cli, CompulsoryCountingOption) {
  const Outcome r = run({"translate", golden_, "--compulsory-counting", "per-restriction", "--report", path("r.txt")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(testing::read_file(path("r.txt")).find("CR=8"), std::string::npos);
  EXPECT_EQ(run({"translate", golden_, "--compulsory-counting", "sometimes"}).code, 2);
}

TEST_F(Cli, SyntaxErrorExitsTwo) {
  const std::string broken = write("broken.erdm", "diagram D {\n  entity A { attr v : [1, \n");
  const Outcome r = run({"translate", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("broken.erdm:2:"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, UnreadableInputExitsTwo) {
  EXPECT_EQ(run({"translate", path("missing.erdm")}).code, 2);
  EXPECT_EQ(run({"validate", path("missing.erdm")}).code, 2);
}

TEST_F(Cli, ModelErrorExitsOne) {
  const std::string bad = write("bad.erdm", "diagram D { relationship R { role a -> NOWHERE role b -> NOWHERE } }\n");
  const Outcome r = run({"translate", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unresolved-reference"), std::string::npos) << r.err;
}

TEST_F(Cli, AnswersAreReplayable) {
  const std::string model = write("m.erdm",
                                  "diagram D { entity A card 10 { attr v : ascii(3) } }\n"
                                  "restriction R1 other informal \"no two A share v\"\n");
  const std::string answers = write("a.json", R"json({"formalization": {"R1": "(forall x, y in A)(x <> y => v(x) <> v(y))"}})json");
  const Outcome first = run({"translate", model, "--answers", answers, "--save-answers", path("saved.json")});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_NE(first.out.find("R1: (forall x, y in A)"), std::string::npos);
  const Outcome second = run({"translate", model, "--answers", path("saved.json")});
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(run({"translate", model, "--answers", write("bad.json", "[1, 2")}).code, 2);
}

TEST_F(Cli, InteractivePromptsOnStderr) {
  const std::string model = write("m.erdm",
                                  "diagram D { entity A card 10 { attr v : ascii(3) } }\n"
                                  "restriction R1 other informal \"no two A share v\"\n");
  const Outcome r = run({"translate", model, "--interactive"}, "(forall x, y in A)(x <> y => v(x) <> v(y))\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("R1"), std::string::npos);
  EXPECT_NE(r.out.find("R1: (forall x, y in A)"), std::string::npos);

  const Outcome declined = run({"translate", model, "--interactive"}, "\n");
  EXPECT_EQ(declined.code, 0);
  EXPECT_NE(declined.out.find("R1: \"no two A share v\""), std::string::npos);
  EXPECT_EQ(run({"translate", "-", "--interactive"}, "").code, 2);
}

TEST_F(Cli, ValidateGolden) {
  const Outcome r = run({"validate", golden_});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 errors\n");
}

TEST_F(Cli, ValidateDanglingRole) {
  std::string text = testing::read_file(golden_);
  text.replace(text.find("role Class -> CLASSES"), 21, "role Class -> CLASES");
  const Outcome r = run({"validate", write("dangling.erdm", text)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("CLASES"), std::string::npos);
  EXPECT_NE(r.out.find("1 error\n"), std::string::npos);
}

TEST_F(Cli, ValidateSyntaxError) {
  const Outcome r = run({"validate", "-"}, "diagram {");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("1 error"), std::string::npos);
}

TEST_F(Cli, CheckGolden) {
  const Outcome r = run({"check", golden_});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int passes = 0;
  while (std::getline(lines, line))
    passes += line.starts_with("PASS ");
  EXPECT_EQ(passes, 4) << r.out;
}

TEST_F(Cli, CheckFuzz) {
  const Outcome r = run({"check", "--fuzz", "20", "--seed", "100"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("[seed 119]"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"translate"}).code, 2);
  const Outcome help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("translate"), std::string::npos);
}

}  // namespace
}  // namespace erc
