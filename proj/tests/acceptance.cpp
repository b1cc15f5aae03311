// Acceptance run: one PASS/FAIL line per headline requirement. Exit status
// is the number of failed lines.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "census_oracle.hpp"
#include "erc/census.hpp"
#include "erc/emitter.hpp"
#include "erc/enrichment.hpp"
#include "erc/generator.hpp"
#include "erc/translator.hpp"
#include "fixtures.hpp"

namespace {

using namespace erc;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the first failure of a criterion; later ones are dropped.
struct Verdict {
  std::string failure;

  void require(bool ok, const std::string& what) {
    if (!ok && failure.empty())
      failure = what;
  }
  bool ok() const { return failure.empty(); }
};

std::string collapse_whitespace(const std::string& text) {
  std::istringstream in(text);
  std::string token, out;
  while (in >> token)
    out += (out.empty() ? "" : " ") + token;
  return out;
}

EmdmScheme unenriched(const ERModel& model) {
  QuestionSession session;
  const InputDefaults defaults = apply_input_defaults(model, kDefaultDbmsMaxCardinality, session);
  Translator t(defaults.model, CompulsoryCounting::PerMapping, session);
  t.run();
  return t.scheme();
}

bool fired_with(const std::vector<Diagnostic>& ds, std::string_view code, Severity severity) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code && d.severity == severity; });
}

std::string golden_reproduction() {
  Verdict v;
  const auto start = Clock::now();
  const ERModel model = testing::golden_model();
  const auto result = translate(model);
  v.require(result.scheme.has_value(), "no scheme produced");
  if (!v.ok())
    return v.failure;
  const std::string text = emit_text(*result.scheme, Glyphs::Unicode);
  const std::string structured = emit_structured(*result.scheme, &result.report);
  const double elapsed = seconds_since(start);

  const std::string golden = testing::read_file(testing::data_path("teaching.golden.txt"));
  v.require(collapse_whitespace(normalize_glyphs(text)) == collapse_whitespace(golden), "text differs from golden file");

  const std::vector<std::pair<std::string, int>> digits = {
      {"STUDENTS", 5}, {"TEACHERS", 3}, {"DISCIPLINES", 3}, {"ROOMS", 3},
      {"CLASSES", 4},  {"SCHEDULES", 5}, {"ATTENDANCES", 9}, {"COMPETENCES", 4}};
  for (const auto& [set, n] : digits) {
    const SchemeSet* s = result.scheme->find_set(set);
    v.require(s && s->identifier && s->identifier->value_range == Range::nat(n), set + " identifier digits");
  }

  const StructuredDocument doc = load_structured(structured);
  const SchemeSet* schedules = doc.scheme.find_set("SCHEDULES");
  const Key* r42 = schedules ? schedules->find_key("R42") : nullptr;
  v.require(r42 && r42->implicit && r42->generated && r42->review &&
                r42->mappings == std::vector<std::string>{"Room", "Competence"},
            "R42 missing from structured output");
  v.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  return v.failure;
}

std::string proposition_suite() {
  Verdict v;
  const auto start = Clock::now();
  auto check = [&](const ERModel& model, const std::string& tag) {
    const auto result = translate(model);
    if (!result.scheme) {
      v.require(false, tag + ": no scheme");
      return;
    }
    const auto oracle = testing::brute_force_census(result.effective_model, true);
    v.require(result.report.tally.total() == oracle.total() && result.report.steps.size() == oracle.total(),
              tag + ": step tally " + std::to_string(result.report.steps.size()) + " vs oracle " +
                  std::to_string(oracle.total()));
    for (const auto& p : check_properties(result))
      v.require(p.passed, tag + ": " + p.name + " " + p.detail);
  };
  check(testing::golden_model(), "golden");
  for (std::uint64_t seed = 1; seed <= 1000; ++seed)
    check(generate_model(seed), "seed " + std::to_string(seed));
  const double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  return v.failure;
}

std::string linearity() {
  Verdict v;
  for (std::size_t size : {10u, 100u, 1000u}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto result = translate(generate_model_of_size(seed, size));
      const auto oracle = testing::brute_force_census(result.effective_model, true);
      v.require(oracle.total() == size && result.report.steps.size() == size,
                "size " + std::to_string(size) + " seed " + std::to_string(seed) + ": " +
                    std::to_string(result.report.steps.size()) + " steps");
    }
  }
  return v.failure;
}

std::string enrichment_rules() {
  Verdict v;
  auto idempotent_input = [&](const ERModel& m, std::uint64_t max, const std::string& tag) {
    QuestionSession session;
    const InputDefaults once = apply_input_defaults(m, max, session);
    const InputDefaults twice = apply_input_defaults(once.model, max, session);
    v.require(twice.actions.empty() && twice.model == once.model, tag + " not idempotent");
    return once;
  };
  auto idempotent_scheme = [&](const std::function<RuleOutcome(const EmdmScheme&)>& rule, const RuleOutcome& once,
                               const std::string& tag) {
    const RuleOutcome twice = rule(once.scheme);
    v.require(twice.actions.empty() && twice.scheme == once.scheme, tag + " not idempotent");
  };

  {
    const auto d = idempotent_input(testing::parse_or_die("diagram D { entity A { attr v : ascii(4) } }"), 5000, "(i)");
    v.require(d.model.find_set("A")->max_cardinality == 5000u && d.actions.size() == 1 &&
                  fired_with(d.diagnostics, "missing-cardinality", Severity::Info),
              "(i) cardinality default");
  }
  {
    const auto d = idempotent_input(
        testing::parse_or_die("diagram D { entity A card 10^11 { attr v : ascii(4) } }"), kDefaultDbmsMaxCardinality, "(ii)");
    v.require(d.model.find_set("A")->max_cardinality == kDefaultDbmsMaxCardinality && d.actions.size() == 1 &&
                  fired_with(d.diagnostics, "excess-cardinality", Severity::Warning),
              "(ii) cardinality clamp");
  }
  {
    const auto d = idempotent_input(testing::parse_or_die("diagram D { entity LOG card 10 { attr Notes } }"),
                                    kDefaultDbmsMaxCardinality, "(iii)");
    v.require(d.model.find_set("LOG")->attributes[0].range == Range::ascii(255) && d.actions.size() == 1 &&
                  fired_with(d.diagnostics, "missing-range", Severity::Info),
              "(iii) range default");
  }
  {
    const auto d = idempotent_input(
        testing::parse_or_die("diagram D { entity A card 10 { attr v : ascii(3) } computed C { attr w computed } }"),
        kDefaultDbmsMaxCardinality, "(iv)");
    v.require(!d.model.find_set("C") && d.actions.size() == 1 &&
                  fired_with(d.diagnostics, "definition-missing", Severity::Warning),
              "(iv) computed set without definition");
  }
  {
    const EmdmScheme s = unenriched(testing::parse_or_die(
        "diagram D { entity A { attr v } entity B { attr w } relationship R { role a -> A role b -> B } }"));
    const RuleOutcome once = ensure_totality(s);
    const SchemeSet* r = once.scheme.find_set("R");
    v.require(r->find_mapping("a")->total && r->find_mapping("b")->total && once.actions.size() == 2 &&
                  fired_with(once.diagnostics, "totality-added", Severity::Info),
              "(v) role totality");
    idempotent_scheme(ensure_totality, once, "(v)");
  }
  const EmdmScheme log = unenriched(testing::parse_or_die("diagram D { entity LOG { attr Note : ascii(100) } }"));
  {
    const RuleOutcome once = ensure_compulsory(log);
    const Mapping* m = once.scheme.find_set("LOG")->find_mapping("Compulsory");
    v.require(m && m->total && !m->one_to_one && once.actions.size() == 1 &&
                  fired_with(once.diagnostics, "compulsory-added", Severity::Info),
              "(vi) compulsory mapping");
    idempotent_scheme(ensure_compulsory, once, "(vi)");
  }
  {
    const RuleOutcome once = ensure_structural_key(unenriched(testing::golden_model()));
    const Key* k = once.scheme.find_set("SCHEDULES")->find_key("R42");
    v.require(k && format_key(*k, Glyphs::Unicode) == "R42: Room • Competence" && once.actions.size() == 1 &&
                  fired_with(once.diagnostics, "structural-key", Severity::Info),
              "(vii) R42 structural key");
    idempotent_scheme(ensure_structural_key, once, "(vii)");
  }
  {
    const EmdmScheme s = ensure_totality(unenriched(testing::parse_or_die(
                                             "diagram D {\n"
                                             "  entity MEN { attr Name }\n"
                                             "  entity WOMEN { attr Name }\n"
                                             "  relationship MARRIAGE { role husband -> MEN unique role wife -> WOMEN unique }\n"
                                             "}\n")))
                             .scheme;
    Answers answers;
    answers.set(QuestionKind::BijectionDirection, "MARRIAGE", "MEN->WOMEN");
    QuestionSession session(answers, nullptr);
    const RuleOutcome once = collapse_binary_relationships(s, session);
    const Mapping* m = once.scheme.find_set("MEN")->find_mapping("MARRIAGE");
    v.require(!once.scheme.find_set("MARRIAGE") && m && m->target_set == "WOMEN" && m->one_to_one &&
                  once.actions.size() == 1 && fired_with(once.diagnostics, "binary-collapse", Severity::Info),
              "(viii) MARRIAGE : MEN <-> WOMEN");
    idempotent_scheme([&](const EmdmScheme& x) { return collapse_binary_relationships(x, session); }, once, "(viii)");
  }
  {
    const RuleOutcome once = ensure_uniqueness(log);
    const Mapping* m = once.scheme.find_set("LOG")->find_mapping("UniqueMapping");
    v.require(m && m->total && m->one_to_one && once.actions.size() == 1 &&
                  fired_with(once.diagnostics, "unique-mapping-added", Severity::Info),
              "(ix) unique mapping");
    idempotent_scheme(ensure_uniqueness, once, "(ix)");
  }
  return v.failure;
}

std::string formula_round_trip() {
  Verdict v;
  const ERModel m = testing::golden_model();
  for (const char* label : {"R37", "R38", "R39", "R40", "R41"}) {
    const Restriction* r = m.find_restriction(label);
    const auto* body = r ? std::get_if<OtherBody>(&r->body) : nullptr;
    if (!body || !body->formal) {
      v.require(false, std::string(label) + " has no formula");
      continue;
    }
    const auto again = parse_formula(print_formula(*body->formal));
    v.require(again.ok() && *again.formula == *body->formal, std::string(label) + " does not round-trip");
    const bool tuple = quantifier_count(*body->formal) == 1;
    v.require(tuple == (std::string(label) == "R37"), std::string(label) + " routed wrongly");
  }
  const auto result = translate(m);
  if (result.scheme) {
    std::vector<std::string> tuple, trailing;
    for (const auto& c : result.scheme->constraints) {
      if (std::holds_alternative<TupleConstraint>(c.body))
        tuple.push_back(c.label);
      if (std::holds_alternative<NonrelationalConstraint>(c.body))
        trailing.push_back(c.label);
    }
    v.require(tuple == std::vector<std::string>{"R37"} &&
                  trailing == std::vector<std::string>{"R38", "R39", "R40", "R41"},
              "scheme placement differs");
  }
  return v.failure;
}

std::string structured_round_trip() {
  Verdict v;
  auto check = [&](const TranslationResult& result, const std::string& tag) {
    if (!result.scheme) {
      v.require(false, tag + ": no scheme");
      return;
    }
    const StructuredDocument doc = load_structured(emit_structured(*result.scheme, &result.report));
    v.require(doc.scheme == *result.scheme, tag + ": scheme differs after reload");
  };
  check(translate(testing::golden_model()), "golden");
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    check(translate(generate_model(seed)), "seed " + std::to_string(seed));
  return v.failure;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    const char* tolerance;
    std::function<std::string()> run;
  };
  const Criterion criteria[] = {
      {"golden reproduction", "token-exact, < 1 s", golden_reproduction},
      {"proposition suite (golden + 1000 fuzzed)", "exact, < 30 s", proposition_suite},
      {"linearity at 10/100/1000 elements", "exact", linearity},
      {"enrichment rules (i)-(ix)", "exact, idempotent", enrichment_rules},
      {"formula round-trip R37-R41", "structural equality", formula_round_trip},
      {"structured round-trip (golden + 100 fuzzed)", "structural equality", structured_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string failure;
    try {
      failure = c.run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure.empty()) {
      std::cout << "PASS " << c.name << " [" << c.tolerance << "]\n";
    } else {
      std::cout << "FAIL " << c.name << " [" << c.tolerance << "]: " << failure << "\n";
      ++failed;
    }
  }
  return failed;
}
