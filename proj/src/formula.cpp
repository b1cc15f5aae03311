#include "erc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace erc {

struct Term::Node {
  Kind kind;
  std::string name;
  std::int64_t value = 0;
  std::optional<Term> argument;
};

struct Formula::Node {
  Kind kind = Kind::Compare;
  std::string variable;
  std::string domain;
  CompareOp op = CompareOp::Equal;
  std::vector<Formula> children;
  std::optional<Term> lhs;
  std::optional<Term> rhs;
};

// Term -----------------------------------------------------------------------

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), 0, std::nullopt}));
}

Term Term::apply(std::string mapping, Term argument) {
  return Term(std::make_shared<const Node>(Node{Kind::Apply, std::move(mapping), 0, std::move(argument)}));
}

Term Term::integer(std::int64_t value) {
  return Term(std::make_shared<const Node>(Node{Kind::Integer, {}, value, std::nullopt}));
}

Term Term::text(std::string value) {
  return Term(std::make_shared<const Node>(Node{Kind::Text, std::move(value), 0, std::nullopt}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::int64_t Term::integer_value() const { return node_->value; }

const Term& Term::argument() const {
  if (!node_->argument)
    throw std::logic_error("term has no argument");
  return *node_->argument;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Text:
      return a.name() == b.name();
    case Term::Kind::Integer:
      return a.integer_value() == b.integer_value();
    case Term::Kind::Apply:
      return a.name() == b.name() && a.argument() == b.argument();
  }
  return false;
}

// Formula --------------------------------------------------------------------

Formula Formula::forall(std::string variable, std::string domain, Formula body) {
  Node n;
  n.kind = Kind::Forall;
  n.variable = std::move(variable);
  n.domain = std::move(domain);
  n.children.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {

Formula::Node binary(Formula::Kind kind, Formula l, Formula r) {
  Formula::Node n;
  n.kind = kind;
  n.children.push_back(std::move(l));
  n.children.push_back(std::move(r));
  return n;
}

}  // namespace

Formula Formula::implication(Formula premise, Formula conclusion) {
  return Formula(std::make_shared<const Node>(binary(Kind::Implies, std::move(premise), std::move(conclusion))));
}

Formula Formula::conjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(binary(Kind::And, std::move(left), std::move(right))));
}

Formula Formula::disjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(binary(Kind::Or, std::move(left), std::move(right))));
}

Formula Formula::negation(Formula operand) {
  Node n;
  n.kind = Kind::Not;
  n.children.push_back(std::move(operand));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::compare(CompareOp op, Term lhs, Term rhs) {
  Node n;
  n.kind = Kind::Compare;
  n.op = op;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula::Kind Formula::kind() const { return node_->kind; }

namespace {

void require(bool ok, const char* what) {
  if (!ok)
    throw std::logic_error(what);
}

}  // namespace

const std::string& Formula::variable() const {
  require(kind() == Kind::Forall, "not a quantifier");
  return node_->variable;
}

const std::string& Formula::domain() const {
  require(kind() == Kind::Forall, "not a quantifier");
  return node_->domain;
}

const Formula& Formula::body() const {
  require(kind() == Kind::Forall, "not a quantifier");
  return node_->children[0];
}

const Formula& Formula::left() const {
  require(node_->children.size() == 2, "not a binary connective");
  return node_->children[0];
}

const Formula& Formula::right() const {
  require(node_->children.size() == 2, "not a binary connective");
  return node_->children[1];
}

const Formula& Formula::operand() const {
  require(kind() == Kind::Not, "not a negation");
  return node_->children[0];
}

CompareOp Formula::op() const {
  require(kind() == Kind::Compare, "not a comparison");
  return node_->op;
}

const Term& Formula::lhs() const {
  require(kind() == Kind::Compare, "not a comparison");
  return *node_->lhs;
}

const Term& Formula::rhs() const {
  require(kind() == Kind::Compare, "not a comparison");
  return *node_->rhs;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
    case Formula::Kind::Forall:
      return a.variable() == b.variable() && a.domain() == b.domain() && a.body() == b.body();
    case Formula::Kind::Not:
      return a.operand() == b.operand();
    case Formula::Kind::Compare:
      return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

std::string_view to_string(CompareOp op, Glyphs glyphs) {
  const bool u = glyphs == Glyphs::Unicode;
  switch (op) {
    case CompareOp::Equal:
      return "=";
    case CompareOp::NotEqual:
      return u ? "≠" : "<>";
    case CompareOp::Less:
      return "<";
    case CompareOp::LessEqual:
      return u ? "≤" : "<=";
    case CompareOp::Greater:
      return ">";
    case CompareOp::GreaterEqual:
      return u ? "≥" : ">=";
  }
  return "=";
}

// Lexer ----------------------------------------------------------------------

namespace {

enum class Tok {
  Name, Int, Text, LParen, RParen, Comma, Forall, In,
  Eq, Ne, Lt, Le, Gt, Ge, Not, And, Or, Implies, End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Name: return "name";
    case Tok::Int: return "integer";
    case Tok::Text: return "text literal";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Forall: return "'forall'";
    case Tok::In: return "'in'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'<>'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'=>'";
    case Tok::End: return "end of formula";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

struct Failure {
  ParseError error;
};

bool is_name_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool is_name_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '#'; }

class FormulaLexer {
 public:
  FormulaLexer(std::string_view src, SourceLoc origin) : src_(src), origin_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      out.push_back(next(line, col));
    }
  }

  ParseError error_at(int line, int col, std::string message, std::string expected = {}) const {
    return ParseError{abs_line(line), abs_col(line, col), std::move(message), std::move(expected)};
  }

  int abs_line(int line) const { return origin_.line + line - 1; }
  int abs_col(int line, int col) const { return line == 1 ? origin_.column + col - 1 : col; }

 private:
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
  }

  void advance(std::size_t bytes = 1) {
    for (std::size_t i = 0; i < bytes && pos_ < src_.size(); ++i) {
      const auto c = static_cast<unsigned char>(src_[pos_++]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(peek()))
      advance();
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  Token next(int line, int col) {
    auto simple = [&](Tok kind, std::size_t bytes) {
      Token t{kind, std::string(src_.substr(pos_, bytes)), line, col};
      advance(bytes);
      return t;
    };
    static constexpr std::pair<std::string_view, Tok> glyphs[] = {
        {"∀", Tok::Forall}, {"∈", Tok::In}, {"≠", Tok::Ne}, {"≤", Tok::Le}, {"≥", Tok::Ge},
        {"∧", Tok::And},    {"∨", Tok::Or}, {"¬", Tok::Not}, {"⇒", Tok::Implies},
    };
    for (const auto& [glyph, kind] : glyphs)
      if (starts_with(glyph))
        return simple(kind, glyph.size());

    const unsigned char c = peek();
    switch (c) {
      case '(': return simple(Tok::LParen, 1);
      case ')': return simple(Tok::RParen, 1);
      case ',': return simple(Tok::Comma, 1);
      case '&': return simple(Tok::And, 1);
      case '|': return simple(Tok::Or, 1);
      case '=': return peek(1) == '>' ? simple(Tok::Implies, 2) : simple(Tok::Eq, 1);
      case '!': return peek(1) == '=' ? simple(Tok::Ne, 2) : simple(Tok::Not, 1);
      case '<':
        if (peek(1) == '>') return simple(Tok::Ne, 2);
        if (peek(1) == '=') return simple(Tok::Le, 2);
        return simple(Tok::Lt, 1);
      case '>': return peek(1) == '=' ? simple(Tok::Ge, 2) : simple(Tok::Gt, 1);
      case '\'': {
        advance();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && peek() != '\'' && peek() != '\n')
          advance();
        if (peek() != '\'')
          throw Failure{error_at(line, col, "unterminated text literal", "'")};
        Token t{Tok::Text, std::string(src_.substr(start, pos_ - start)), line, col};
        advance();
        return t;
      }
      default:
        break;
    }
    if (std::isdigit(c) || (c == '-' && std::isdigit(peek(1)))) {
      const std::size_t start = pos_;
      advance();
      while (std::isdigit(peek()))
        advance();
      return Token{Tok::Int, std::string(src_.substr(start, pos_ - start)), line, col};
    }
    if (is_name_start(c)) {
      const std::size_t start = pos_;
      while (is_name_char(peek()))
        advance();
      std::string word(src_.substr(start, pos_ - start));
      Tok kind = word == "forall" ? Tok::Forall : word == "in" ? Tok::In : Tok::Name;
      return Token{kind, std::move(word), line, col};
    }
    throw Failure{error_at(line, col, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'")};
  }

  std::string_view src_;
  SourceLoc origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Parser ---------------------------------------------------------------------

class FormulaParser {
 public:
  FormulaParser(std::vector<Token> tokens, const FormulaLexer& lexer)
      : toks_(std::move(tokens)), lexer_(lexer) {}

  Formula parse() {
    Formula f = implication();
    if (cur().kind != Tok::End)
      fail(cur(), "unexpected " + std::string(describe(cur().kind)), "end of formula");
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t ahead) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& at, std::string message, std::string expected = {}) const {
    throw Failure{lexer_.error_at(at.line, at.column, std::move(message), std::move(expected))};
  }

  const Token& expect(Tok kind) {
    if (cur().kind != kind)
      fail(cur(), "unexpected " + std::string(describe(cur().kind)), describe(kind));
    return toks_[pos_++];
  }

  bool accept(Tok kind) {
    if (cur().kind != kind)
      return false;
    ++pos_;
    return true;
  }

  Formula implication() {
    Formula premise = disjunction();
    if (accept(Tok::Implies))
      return Formula::implication(std::move(premise), implication());
    return premise;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or))
      f = Formula::disjunction(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And))
      f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not))
      return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    if (cur().kind == Tok::LParen) {
      if (peek(1).kind == Tok::Forall)
        return quantifier();
      ++pos_;
      Formula f = implication();
      expect(Tok::RParen);
      return f;
    }
    return comparison();
  }

  Formula quantifier() {
    expect(Tok::LParen);
    expect(Tok::Forall);
    std::vector<const Token*> names;
    do {
      if (cur().kind != Tok::Name)
        fail(cur(), "malformed quantifier", "variable name");
      names.push_back(&toks_[pos_++]);
    } while (accept(Tok::Comma));
    if (cur().kind != Tok::In)
      fail(cur(), "malformed quantifier", "'in'");
    ++pos_;
    if (cur().kind != Tok::Name)
      fail(cur(), "malformed quantifier", "set name");
    const std::string domain = toks_[pos_++].text;
    expect(Tok::RParen);

    for (const Token* name : names) {
      if (std::find(bound_.begin(), bound_.end(), name->text) != bound_.end())
        fail(*name, "variable '" + name->text + "' is already bound");
      bound_.push_back(name->text);
    }
    Formula body = quantifier_body();
    bound_.resize(bound_.size() - names.size());

    for (auto it = names.rbegin(); it != names.rend(); ++it)
      body = Formula::forall((*it)->text, domain, std::move(body));
    return body;
  }

  Formula quantifier_body() {
    if (cur().kind != Tok::LParen)
      fail(cur(), "malformed quantifier: body must be parenthesized", "'('");
    if (peek(1).kind == Tok::Forall)
      return quantifier();
    ++pos_;
    Formula f = implication();
    expect(Tok::RParen);
    return f;
  }

  Formula comparison() {
    Term lhs = term();
    CompareOp op;
    switch (cur().kind) {
      case Tok::Eq: op = CompareOp::Equal; break;
      case Tok::Ne: op = CompareOp::NotEqual; break;
      case Tok::Lt: op = CompareOp::Less; break;
      case Tok::Le: op = CompareOp::LessEqual; break;
      case Tok::Gt: op = CompareOp::Greater; break;
      case Tok::Ge: op = CompareOp::GreaterEqual; break;
      default:
        fail(cur(), "unexpected " + std::string(describe(cur().kind)), "comparison operator");
    }
    ++pos_;
    Term rhs = term();
    return Formula::compare(op, std::move(lhs), std::move(rhs));
  }

  Term term() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Name: {
        ++pos_;
        if (accept(Tok::LParen)) {
          Term arg = term();
          expect(Tok::RParen);
          return Term::apply(t.text, std::move(arg));
        }
        if (std::find(bound_.begin(), bound_.end(), t.text) == bound_.end())
          fail(t, "unbound variable '" + t.text + "'");
        return Term::variable(t.text);
      }
      case Tok::Int: {
        std::int64_t value = 0;
        const auto* first = t.text.data();
        const auto [ptr, ec] = std::from_chars(first, first + t.text.size(), value);
        if (ec != std::errc{} || ptr != first + t.text.size())
          fail(t, "integer literal out of range");
        ++pos_;
        return Term::integer(value);
      }
      case Tok::Text:
        ++pos_;
        return Term::text(t.text);
      default:
        fail(t, "unexpected " + std::string(describe(t.kind)), "term");
    }
  }

  std::vector<Token> toks_;
  const FormulaLexer& lexer_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

FormulaParseResult parse_formula(std::string_view source, SourceLoc origin) {
  FormulaLexer lexer(source, origin);
  try {
    FormulaParser parser(lexer.run(), lexer);
    return {parser.parse(), {}};
  } catch (const Failure& f) {
    return {std::nullopt, {f.error}};
  }
}

// Printing -------------------------------------------------------------------

namespace {

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    case Formula::Kind::Compare: return 5;
    case Formula::Kind::Forall: return 6;
  }
  return 6;
}

void print(const Formula& f, Glyphs g, std::string& out);

void print_at_least(const Formula& f, int min_prec, Glyphs g, std::string& out) {
  if (precedence(f) < min_prec) {
    out += '(';
    print(f, g, out);
    out += ')';
  } else {
    print(f, g, out);
  }
}

void print(const Formula& f, Glyphs g, std::string& out) {
  const bool u = g == Glyphs::Unicode;
  switch (f.kind()) {
    case Formula::Kind::Forall: {
      const Formula* node = &f;
      std::string vars = node->variable();
      while (node->body().kind() == Formula::Kind::Forall && node->body().domain() == f.domain()) {
        node = &node->body();
        vars += ", " + node->variable();
      }
      out += u ? "(∀" : "(forall ";
      out += vars;
      out += u ? " ∈ " : " in ";
      out += f.domain();
      out += ')';
      const Formula& body = node->body();
      if (body.kind() == Formula::Kind::Forall) {
        print(body, g, out);
      } else {
        out += '(';
        print(body, g, out);
        out += ')';
      }
      return;
    }
    case Formula::Kind::Implies:
      print_at_least(f.left(), 2, g, out);
      out += u ? " ⇒ " : " => ";
      print_at_least(f.right(), 1, g, out);
      return;
    case Formula::Kind::Or:
      print_at_least(f.left(), 2, g, out);
      out += u ? " ∨ " : " | ";
      print_at_least(f.right(), 3, g, out);
      return;
    case Formula::Kind::And:
      print_at_least(f.left(), 3, g, out);
      out += u ? " ∧ " : " & ";
      print_at_least(f.right(), 4, g, out);
      return;
    case Formula::Kind::Not:
      out += u ? "¬" : "!";
      print_at_least(f.operand(), 4, g, out);
      return;
    case Formula::Kind::Compare:
      out += print_term(f.lhs());
      out += ' ';
      out += to_string(f.op(), g);
      out += ' ';
      out += print_term(f.rhs());
      return;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& free);

void collect_free(const Term& t, const std::vector<std::string>& bound, std::set<std::string>& free) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end())
        free.insert(t.name());
      return;
    case Term::Kind::Apply:
      collect_free(t.argument(), bound, free);
      return;
    default:
      return;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& free) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
      bound.push_back(f.variable());
      collect_free(f.body(), bound, free);
      bound.pop_back();
      return;
    case Formula::Kind::Not:
      collect_free(f.operand(), bound, free);
      return;
    case Formula::Kind::Compare:
      collect_free(f.lhs(), bound, free);
      collect_free(f.rhs(), bound, free);
      return;
    default:
      collect_free(f.left(), bound, free);
      collect_free(f.right(), bound, free);
      return;
  }
}

void collect_quantified(const Formula& f, std::vector<std::pair<std::string, std::string>>& out) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
      out.emplace_back(f.variable(), f.domain());
      collect_quantified(f.body(), out);
      return;
    case Formula::Kind::Not:
      collect_quantified(f.operand(), out);
      return;
    case Formula::Kind::Compare:
      return;
    default:
      collect_quantified(f.left(), out);
      collect_quantified(f.right(), out);
      return;
  }
}

void collect_applied(const Term& t, std::vector<std::string>& out) {
  if (t.kind() == Term::Kind::Apply) {
    out.push_back(t.name());
    collect_applied(t.argument(), out);
  }
}

void collect_applied(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
      collect_applied(f.body(), out);
      return;
    case Formula::Kind::Not:
      collect_applied(f.operand(), out);
      return;
    case Formula::Kind::Compare:
      collect_applied(f.lhs(), out);
      collect_applied(f.rhs(), out);
      return;
    default:
      collect_applied(f.left(), out);
      collect_applied(f.right(), out);
      return;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.name();
    case Term::Kind::Apply:
      return t.name() + "(" + print_term(t.argument()) + ")";
    case Term::Kind::Integer:
      return std::to_string(t.integer_value());
    case Term::Kind::Text:
      return "'" + t.name() + "'";
  }
  return {};
}

std::string print_formula(const Formula& formula, Glyphs glyphs) {
  std::string out;
  print(formula, glyphs, out);
  return out;
}

std::set<std::string> free_variables(const Formula& formula) {
  std::vector<std::string> bound;
  std::set<std::string> free;
  collect_free(formula, bound, free);
  return free;
}

std::vector<std::pair<std::string, std::string>> quantified_variables(const Formula& formula) {
  std::vector<std::pair<std::string, std::string>> out;
  collect_quantified(formula, out);
  return out;
}

std::size_t quantifier_count(const Formula& formula) {
  std::set<std::string> names;
  for (const auto& [var, domain] : quantified_variables(formula))
    names.insert(var);
  return names.size();
}

std::vector<std::string> applied_mappings(const Formula& formula) {
  std::vector<std::string> out;
  collect_applied(formula, out);
  return out;
}

}  // namespace erc
