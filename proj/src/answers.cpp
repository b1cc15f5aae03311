#include "erc/answers.hpp"

#include <nlohmann/json.hpp>

namespace erc {

std::string_view to_string(QuestionKind kind) {
  switch (kind) {
    case QuestionKind::ComputedDefinition: return "computed-definition";
    case QuestionKind::BijectionDirection: return "bijection-direction";
    case QuestionKind::Formalization: return "formalization";
  }
  return "formalization";
}

std::string_view to_string(AnswerOrigin origin) {
  switch (origin) {
    case AnswerOrigin::Scripted: return "scripted";
    case AnswerOrigin::Interactive: return "interactive";
    case AnswerOrigin::Unanswered: return "unanswered";
  }
  return "unanswered";
}

std::optional<QuestionKind> question_kind_from_string(std::string_view text) {
  for (auto k : {QuestionKind::ComputedDefinition, QuestionKind::BijectionDirection, QuestionKind::Formalization})
    if (to_string(k) == text)
      return k;
  return std::nullopt;
}

std::optional<AnswerOrigin> answer_origin_from_string(std::string_view text) {
  for (auto o : {AnswerOrigin::Scripted, AnswerOrigin::Interactive, AnswerOrigin::Unanswered})
    if (to_string(o) == text)
      return o;
  return std::nullopt;
}

std::optional<std::string> Answers::find(QuestionKind kind, std::string_view key) const {
  auto group = entries_.find(kind);
  if (group == entries_.end())
    return std::nullopt;
  auto it = group->second.find(key);
  if (it == group->second.end())
    return std::nullopt;
  return it->second;
}

void Answers::set(QuestionKind kind, std::string key, std::string value) {
  entries_[kind][std::move(key)] = std::move(value);
}

Answers parse_answers(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw AnswersFormatError(std::string("answers file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw AnswersFormatError("answers file must be a JSON object");
  Answers answers;
  for (const auto& [group, entries] : doc.items()) {
    const auto kind = question_kind_from_string(group);
    if (!kind)
      throw AnswersFormatError("unknown question kind '" + group + "'");
    if (!entries.is_object())
      throw AnswersFormatError("'" + group + "' must map keys to strings");
    for (const auto& [key, value] : entries.items()) {
      if (!value.is_string())
        throw AnswersFormatError("answer '" + group + "/" + key + "' must be a string");
      answers.set(*kind, key, value.get<std::string>());
    }
  }
  return answers;
}

std::string dump_answers(const Answers& answers) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [kind, entries] : answers.entries())
    for (const auto& [key, value] : entries)
      doc[std::string(to_string(kind))][key] = value;
  return doc.dump(2) + "\n";
}

Answers answers_from(const std::vector<Question>& questions) {
  Answers out;
  for (const auto& q : questions)
    if (q.answer)
      out.set(q.kind, q.key, *q.answer);
  return out;
}

std::optional<std::string> QuestionSession::ask(QuestionKind kind, std::string key, std::string prompt) {
  Question q{kind, std::move(key), std::move(prompt), std::nullopt, AnswerOrigin::Unanswered};
  if (auto scripted = answers_.find(kind, q.key)) {
    q.answer = std::move(scripted);
    q.origin = AnswerOrigin::Scripted;
  } else if (prompter_) {
    if (auto reply = prompter_(q); reply && !reply->empty()) {
      q.answer = std::move(reply);
      q.origin = AnswerOrigin::Interactive;
    }
  }
  questions_.push_back(q);
  return q.answer;
}

}  // namespace erc
