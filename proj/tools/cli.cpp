#include "erc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "erc/census.hpp"
#include "erc/emitter.hpp"
#include "erc/generator.hpp"
#include "erc/parser.hpp"
#include "erc/translator.hpp"

namespace erc {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

std::optional<std::string> read_source(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file)
    return std::nullopt;
  buf << file.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    err << "erc: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::string display_name(const std::string& path) { return path == "-" ? "<stdin>" : path; }

// Parses `path`; on failure prints the errors and returns nullopt.
std::optional<ERModel> load_model(const std::string& path, std::istream& in, std::ostream& err) {
  const auto source = read_source(path, in);
  if (!source) {
    err << "erc: cannot read " << path << "\n";
    return std::nullopt;
  }
  auto parsed = parse_model_syntax(*source);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors)
      err << display_name(path) << ":" << to_string(e) << "\n";
    return std::nullopt;
  }
  return std::move(*parsed.model);
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics)
    if (d.severity != Severity::Info)
      err << to_string(d) << "\n";
}

struct TranslateArgs {
  std::string input;
  std::string output;
  std::string structured;
  std::string report;
  std::string answers;
  std::string save_answers;
  bool interactive = false;
  bool unicode = false;
  std::uint64_t dbms_max = kDefaultDbmsMaxCardinality;
  std::string counting = "per-mapping";
};

int cmd_translate(const TranslateArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  if (a.interactive && a.input == "-") {
    err << "erc: --interactive reads answers from stdin, so the model must come from a file\n";
    return kBadInput;
  }
  TranslationOptions options;
  options.dbms_max_cardinality = a.dbms_max;
  options.compulsory_counting = *compulsory_counting_from_string(a.counting);
  if (!a.answers.empty()) {
    const auto text = read_source(a.answers, in);
    if (!text) {
      err << "erc: cannot read " << a.answers << "\n";
      return kBadInput;
    }
    try {
      options.answers = parse_answers(*text);
    } catch (const AnswersFormatError& e) {
      err << "erc: " << a.answers << ": " << e.what() << "\n";
      return kBadInput;
    }
  }
  if (a.interactive) {
    options.interactive = true;
    options.prompter = [&](const Question& q) -> std::optional<std::string> {
      err << q.prompt << " " << std::flush;
      std::string line;
      if (!std::getline(in, line) || line.empty())
        return std::nullopt;
      return line;
    };
  }

  const auto model = load_model(a.input, in, err);
  if (!model)
    return kBadInput;

  const TranslationResult result = translate(*model, options);
  print_diagnostics(result.report.diagnostics, err);

  if (!a.report.empty() && !write_file(a.report, emit_report(result.report), err))
    return kFailed;
  if (!a.save_answers.empty()) {
    Answers merged = options.answers;
    const Answers given = answers_from(result.report.questions);
    for (const auto& [kind, entries] : given.entries())
      for (const auto& [key, value] : entries)
        merged.set(kind, key, value);
    if (!write_file(a.save_answers, dump_answers(merged), err))
      return kFailed;
  }
  if (!result.scheme) {
    err << "erc: translation failed; no scheme written\n";
    return kFailed;
  }
  if (!a.structured.empty() && !write_file(a.structured, emit_structured(*result.scheme, &result.report), err))
    return kFailed;

  const std::string text = emit_text(*result.scheme, a.unicode ? Glyphs::Unicode : Glyphs::Ascii);
  if (a.output.empty() || a.output == "-")
    out << text;
  else if (!write_file(a.output, text, err))
    return kFailed;
  return kOk;
}

int cmd_validate(const std::string& input, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto source = read_source(input, in);
  if (!source) {
    err << "erc: cannot read " << input << "\n";
    return kBadInput;
  }
  const auto parsed = parse_model_syntax(*source);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors)
      out << display_name(input) << ":" << to_string(e) << "\n";
    out << parsed.errors.size() << (parsed.errors.size() == 1 ? " error" : " errors") << "\n";
    return kBadInput;
  }
  const auto errors = validate_model(*parsed.model);
  for (const auto& e : errors)
    out << display_name(input) << ":" << to_string(e) << "\n";
  out << errors.size() << (errors.size() == 1 ? " error" : " errors") << "\n";
  return errors.empty() ? kOk : kFailed;
}

bool report_properties(const TranslationResult& result, const std::string& tag, std::ostream& out) {
  bool all = true;
  for (const auto& p : check_properties(result)) {
    out << (p.passed ? "PASS " : "FAIL ") << p.name << tag << ": " << p.detail << "\n";
    all &= p.passed;
  }
  return all;
}

int cmd_check(const std::string& input, std::size_t fuzz, std::uint64_t seed, const std::string& counting,
              std::istream& in, std::ostream& out, std::ostream& err) {
  if (input.empty() && fuzz == 0) {
    err << "erc: check needs an input file or --fuzz N\n";
    return kBadInput;
  }
  TranslationOptions options;
  options.compulsory_counting = *compulsory_counting_from_string(counting);
  bool all = true;
  if (!input.empty()) {
    const auto model = load_model(input, in, err);
    if (!model)
      return kBadInput;
    const auto result = translate(*model, options);
    print_diagnostics(result.report.diagnostics, err);
    all &= report_properties(result, "", out);
  }
  for (std::size_t i = 0; i < fuzz; ++i) {
    const std::uint64_t s = seed + i;
    const auto result = translate(generate_model(s), options);
    if (!report_properties(result, " [seed " + std::to_string(s) + "]", out)) {
      all = false;
      print_diagnostics(result.report.diagnostics, err);
    }
  }
  return all ? kOk : kFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translate E-R data models into (E)MDM schemes", "erc"};
  app.require_subcommand(1);

  TranslateArgs t;
  auto* translate_cmd = app.add_subcommand("translate", "Translate a model and print its scheme");
  translate_cmd->add_option("input", t.input, "Model file, or - for stdin")->required();
  translate_cmd->add_option("-o,--output", t.output, "Write the scheme here instead of stdout");
  translate_cmd->add_option("--structured", t.structured, "Also write the structured (JSON) scheme");
  translate_cmd->add_option("--report", t.report, "Write the translation report");
  translate_cmd->add_flag("--interactive", t.interactive, "Ask for missing definitions, directions and formulas");
  translate_cmd->add_option("--answers", t.answers, "Scripted answers (JSON)");
  translate_cmd->add_option("--save-answers", t.save_answers, "Write every answer given, for replay");
  translate_cmd->add_flag("--unicode", t.unicode, "Print mathematical glyphs instead of ASCII");
  translate_cmd->add_option("--dbms-max-card", t.dbms_max, "Largest cardinality the DBMS supports")
      ->check(CLI::PositiveNumber);
  translate_cmd->add_option("--compulsory-counting", t.counting, "Step count for compulsory restrictions")
      ->check(CLI::IsMember({"per-mapping", "per-restriction"}));

  std::string validate_input;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a model");
  validate_cmd->add_option("input", validate_input, "Model file, or - for stdin")->required();

  std::string check_input;
  std::size_t fuzz = 0;
  std::uint64_t seed = 1;
  std::string check_counting = "per-mapping";
  auto* check_cmd = app.add_subcommand("check", "Verify the step bound, soundness, completeness and optimality");
  check_cmd->add_option("input", check_input, "Model file, or - for stdin");
  check_cmd->add_option("--fuzz", fuzz, "Also check N generated models");
  check_cmd->add_option("--seed", seed, "First generator seed");
  check_cmd->add_option("--compulsory-counting", check_counting, "Step count for compulsory restrictions")
      ->check(CLI::IsMember({"per-mapping", "per-restriction"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  if (translate_cmd->parsed())
    return cmd_translate(t, in, out, err);
  if (validate_cmd->parsed())
    return cmd_validate(validate_input, in, out, err);
  return cmd_check(check_input, fuzz, seed, check_counting, in, out, err);
}

}  // namespace erc
