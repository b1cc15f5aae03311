#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace erc {

/// Questions the translator may need a human to settle.
enum class QuestionKind {
  ComputedDefinition,  // key: "SET" or "SET.mapping"
  BijectionDirection,  // key: relationship name; answer "S->T"
  Formalization,       // key: restriction label; answer is a formula
};

enum class AnswerOrigin { Scripted, Interactive, Unanswered };

std::string_view to_string(QuestionKind kind);
std::string_view to_string(AnswerOrigin origin);
std::optional<QuestionKind> question_kind_from_string(std::string_view text);
std::optional<AnswerOrigin> answer_origin_from_string(std::string_view text);

struct Question {
  QuestionKind kind = QuestionKind::Formalization;
  std::string key;
  std::string prompt;
  std::optional<std::string> answer;
  AnswerOrigin origin = AnswerOrigin::Unanswered;

  friend bool operator==(const Question&, const Question&) = default;
};

/// Scripted answers, keyed by (question kind, element key). The on-disk form
/// is a JSON object of objects:
///   {"formalization": {"R38": "(forall x, y in S)(...)"}, ...}
class Answers {
 public:
  std::optional<std::string> find(QuestionKind kind, std::string_view key) const;
  void set(QuestionKind kind, std::string key, std::string value);
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Answers&, const Answers&) = default;

  const std::map<QuestionKind, std::map<std::string, std::string, std::less<>>>& entries() const {
    return entries_;
  }

 private:
  std::map<QuestionKind, std::map<std::string, std::string, std::less<>>> entries_;
};

class AnswersFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Answers parse_answers(std::string_view json);
std::string dump_answers(const Answers& answers);

/// Answered questions as a replayable answers document.
Answers answers_from(const std::vector<Question>& questions);

/// Returns the user's answer, or nullopt when they decline.
using Prompter = std::function<std::optional<std::string>(const Question&)>;

/// Resolves questions from scripted answers first, then the prompter when
/// one is set. Every question asked is logged, answered or not.
class QuestionSession {
 public:
  QuestionSession() = default;
  QuestionSession(Answers answers, Prompter prompter)
      : answers_(std::move(answers)), prompter_(std::move(prompter)) {}

  std::optional<std::string> ask(QuestionKind kind, std::string key, std::string prompt);

  const std::vector<Question>& questions() const { return questions_; }
  bool interactive() const { return static_cast<bool>(prompter_); }

 private:
  Answers answers_;
  Prompter prompter_;
  std::vector<Question> questions_;
};

}  // namespace erc
