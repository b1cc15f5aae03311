#include "erc/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <stdexcept>

namespace erc {

namespace {

enum class Tok {
  Name, Int, Date, String, LBrace, RBrace, LBracket, RBracket, LParen, RParen,
  Comma, Colon, Dot, Arrow, Equals, Caret, End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Name: return "name";
    case Tok::Int: return "integer";
    case Tok::Date: return "date";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::Caret: return "'^'";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;  // string tokens: unescaped contents
  SourceLoc loc;
  SourceLoc content;  // string tokens: where the contents start
};

struct SyntaxError {
  ParseError error;
};

[[noreturn]] void syntax_error(SourceLoc at, std::string message, std::string expected = {}) {
  throw SyntaxError{ParseError{at.line, at.column, std::move(message), std::move(expected)}};
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      const SourceLoc at{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", at, at});
        return out;
      }
      out.push_back(next(at));
    }
  }

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

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      if (std::isspace(peek())) {
        advance();
      } else if (peek() == '#') {
        while (pos_ < src_.size() && peek() != '\n')
          advance();
      } else {
        return;
      }
    }
  }

  Token simple(Tok kind, std::size_t bytes, SourceLoc at) {
    Token t{kind, std::string(src_.substr(pos_, bytes)), at, at};
    advance(bytes);
    return t;
  }

  Token next(SourceLoc at) {
    const std::string_view rest = src_.substr(pos_);
    if (rest.starts_with("→"))
      return simple(Tok::Arrow, std::string_view("→").size(), at);
    if (rest.starts_with("•"))
      return simple(Tok::Dot, std::string_view("•").size(), at);
    if (rest.starts_with("⊆")) {
      Token t = simple(Tok::Name, std::string_view("⊆").size(), at);
      t.text = "subset_of";
      return t;
    }

    const unsigned char c = peek();
    switch (c) {
      case '{': return simple(Tok::LBrace, 1, at);
      case '}': return simple(Tok::RBrace, 1, at);
      case '[': return simple(Tok::LBracket, 1, at);
      case ']': return simple(Tok::RBracket, 1, at);
      case '(': return simple(Tok::LParen, 1, at);
      case ')': return simple(Tok::RParen, 1, at);
      case ',': return simple(Tok::Comma, 1, at);
      case ':': return simple(Tok::Colon, 1, at);
      case '.': return simple(Tok::Dot, 1, at);
      case '=': return simple(Tok::Equals, 1, at);
      case '^': return simple(Tok::Caret, 1, at);
      case '"': return string(at);
      default: break;
    }
    if (c == '-' && peek(1) == '>')
      return simple(Tok::Arrow, 2, at);
    if (std::isdigit(c) || (c == '-' && std::isdigit(peek(1))))
      return number(at);
    if (std::isalpha(c) || c == '_') {
      const std::size_t start = pos_;
      while (std::isalnum(peek()) || peek() == '_' || peek() == '#')
        advance();
      return Token{Tok::Name, std::string(src_.substr(start, pos_ - start)), at, at};
    }
    syntax_error(at, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
  }

  Token number(SourceLoc at) {
    const std::size_t start = pos_;
    advance();
    while (std::isdigit(peek()))
      advance();
    if (peek() == '/' && src_[start] != '-') {
      for (int part = 0; part < 2; ++part) {
        if (peek() != '/' || !std::isdigit(peek(1)))
          syntax_error(at, "malformed date", "day/month/year");
        advance();
        while (std::isdigit(peek()))
          advance();
      }
      return Token{Tok::Date, std::string(src_.substr(start, pos_ - start)), at, at};
    }
    return Token{Tok::Int, std::string(src_.substr(start, pos_ - start)), at, at};
  }

  Token string(SourceLoc at) {
    advance();
    const SourceLoc content{line_, col_};
    std::string text;
    while (pos_ < src_.size() && peek() != '"') {
      if (peek() == '\\') {
        advance();
        switch (peek()) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          default: syntax_error({line_, col_}, "unknown escape sequence");
        }
        advance();
        continue;
      }
      text += static_cast<char>(peek());
      advance();
    }
    if (pos_ >= src_.size())
      syntax_error(at, "unterminated string", "'\"'");
    advance();
    return Token{Tok::String, std::move(text), at, content};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class ModelParser {
 public:
  explicit ModelParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ModelParseResult parse() {
    try {
      while (cur().kind != Tok::End) {
        if (at_word("diagram"))
          diagram();
        else if (at_word("restriction"))
          restriction();
        else if (at_word("description"))
          description();
        else
          fail_here("unexpected " + std::string(describe(cur().kind)), "'diagram', 'restriction' or 'description'");
      }
    } catch (const SyntaxError& e) {
      return {std::nullopt, {e.error}};
    }
    if (!errors_.empty())
      return {std::nullopt, std::move(errors_)};
    return {std::move(model_), {}};
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t ahead = 1) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  bool at_word(std::string_view word) const { return cur().kind == Tok::Name && cur().text == word; }

  [[noreturn]] void fail_here(std::string message, std::string expected = {}) const {
    syntax_error(cur().loc, std::move(message), std::move(expected));
  }

  const Token& expect(Tok kind) {
    if (cur().kind != kind)
      fail_here("unexpected " + std::string(describe(cur().kind)), describe(kind));
    return toks_[pos_++];
  }

  void expect_word(std::string_view word) {
    if (!at_word(word))
      fail_here("unexpected " + std::string(describe(cur().kind)), "'" + std::string(word) + "'");
    ++pos_;
  }

  bool accept(Tok kind) {
    if (cur().kind != kind)
      return false;
    ++pos_;
    return true;
  }

  bool accept_word(std::string_view word) {
    if (!at_word(word))
      return false;
    ++pos_;
    return true;
  }

  const Token& name(const char* what) {
    if (cur().kind != Tok::Name)
      fail_here("unexpected " + std::string(describe(cur().kind)), what);
    return toks_[pos_++];
  }

  void duplicate(SourceLoc at, const std::string& what, SourceLoc first) {
    errors_.push_back({at.line, at.column,
                       "duplicate " + what + " (first declared at " + std::to_string(first.line) + ":" +
                           std::to_string(first.column) + ")",
                       ""});
  }

  void description() {
    const SourceLoc at = cur().loc;
    ++pos_;
    const Token& text = expect(Tok::String);
    if (model_.description)
      errors_.push_back({at.line, at.column, "duplicate description", ""});
    model_.description = text.text;
  }

  void diagram() {
    ++pos_;
    Diagram d;
    d.name = name("diagram name").text;
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) {
      if (cur().kind == Tok::End)
        fail_here("unterminated diagram", "'}'");
      d.sets.push_back(object_set());
    }
    model_.diagrams.push_back(std::move(d));
  }

  std::uint64_t cardinality() {
    const Token& base = expect(Tok::Int);
    auto parse_u64 = [&](const Token& t) {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
        syntax_error(t.loc, "cardinality must be a non-negative integer");
      return v;
    };
    std::uint64_t value = parse_u64(base);
    if (accept(Tok::Caret)) {
      const Token& exp_tok = expect(Tok::Int);
      const std::uint64_t exponent = parse_u64(exp_tok);
      const std::uint64_t b = value;
      value = 1;
      for (std::uint64_t i = 0; i < exponent; ++i) {
        if (b != 0 && value > std::numeric_limits<std::uint64_t>::max() / b)
          syntax_error(base.loc, "cardinality overflows 64 bits");
        value *= b;
      }
    }
    return value;
  }

  ObjectSet object_set() {
    ObjectSet set;
    set.loc = cur().loc;
    if (accept_word("entity"))
      set.kind = SetKind::Entity;
    else if (accept_word("relationship"))
      set.kind = SetKind::Relationship;
    else if (accept_word("computed"))
      set.kind = SetKind::Computed;
    else
      fail_here("unexpected " + std::string(describe(cur().kind)), "'entity', 'relationship' or 'computed'");

    const Token& n = name("set name");
    set.name = n.text;
    if (auto [it, fresh] = set_locs_.emplace(set.name, n.loc); !fresh)
      duplicate(n.loc, "object set '" + set.name + "'", it->second);

    if (accept_word("subset_of")) {
      do {
        set.included_in.push_back(name("superset name").text);
      } while (accept(Tok::Comma));
    }
    if (accept_word("card"))
      set.max_cardinality = cardinality();
    if (accept(Tok::Equals)) {
      if (set.kind != SetKind::Computed)
        syntax_error(toks_[pos_ - 1].loc, "only computed sets have a definition");
      set.definition = expect(Tok::String).text;
    }

    expect(Tok::LBrace);
    std::map<std::string, SourceLoc> members;
    while (!accept(Tok::RBrace)) {
      const SourceLoc at = cur().loc;
      std::string member_name;
      if (accept_word("attr")) {
        Attribute a;
        const Token& t = name("attribute name");
        a.name = member_name = t.text;
        a.loc = t.loc;
        if (accept(Tok::Colon))
          a.range = range();
        if (accept_word("computed")) {
          a.computed = true;
          if (accept(Tok::Equals))
            a.definition = expect(Tok::String).text;
        }
        set.attributes.push_back(std::move(a));
      } else if (accept_word("role")) {
        if (set.kind != SetKind::Relationship)
          syntax_error(at, "roles are only allowed in relationships");
        Role r;
        const Token& t = name("role name");
        r.name = member_name = t.text;
        r.loc = t.loc;
        expect(Tok::Arrow);
        r.target = name("target set").text;
        r.declared_unique = accept_word("unique");
        set.roles.push_back(std::move(r));
      } else if (accept_word("fn")) {
        StructuralFunction f;
        const Token& t = name("function name");
        f.name = member_name = t.text;
        f.loc = t.loc;
        f.source = set.name;
        expect(Tok::Arrow);
        f.target = name("target set").text;
        if (accept_word("computed")) {
          f.computed = true;
          if (accept(Tok::Equals))
            f.definition = expect(Tok::String).text;
        }
        set.functions.push_back(std::move(f));
      } else if (cur().kind == Tok::End) {
        fail_here("unterminated set body", "'}'");
      } else {
        fail_here("unexpected " + std::string(describe(cur().kind)), "'attr', 'role', 'fn' or '}'");
      }
      if (auto [it, fresh] = members.emplace(member_name, at); !fresh)
        duplicate(at, "mapping '" + set.name + "." + member_name + "'", it->second);
    }
    return set;
  }

  Bound bound() {
    const Token& t = cur();
    try {
      if (t.kind == Tok::Int) {
        ++pos_;
        std::string text = t.text;
        if (accept(Tok::Caret))
          text += "^" + expect(Tok::Int).text;
        return Bound::integer(std::move(text));
      }
      if (t.kind == Tok::Date) {
        ++pos_;
        return Bound::date(t.text);
      }
    } catch (const std::invalid_argument& e) {
      syntax_error(t.loc, e.what());
    }
    if (t.kind == Tok::Name) {
      ++pos_;
      expect(Tok::LParen);
      expect(Tok::RParen);
      return Bound::function(t.text + "()");
    }
    fail_here("unexpected " + std::string(describe(t.kind)), "integer, date or function call");
  }

  int positive_int() {
    const Token& t = expect(Tok::Int);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || v <= 0)
      syntax_error(t.loc, "expected a positive length");
    return v;
  }

  Range range() {
    if (cur().kind == Tok::LBracket) {
      const SourceLoc bracket = cur().loc;
      ++pos_;
      try {
        Bound lo = bound();
        expect(Tok::Comma);
        Bound hi = bound();
        expect(Tok::RBracket);
        return Range::interval(std::move(lo), std::move(hi));
      } catch (const SyntaxError& inner) {
        syntax_error(bracket, "unterminated range '[' (" + inner.error.message + ")", inner.error.expected);
      }
    }
    if (accept_word("ascii") || accept_word("ASCII")) {
      expect(Tok::LParen);
      const int n = positive_int();
      expect(Tok::RParen);
      return Range::ascii(n);
    }
    if (accept_word("nat") || accept_word("NAT")) {
      expect(Tok::LParen);
      const int n = positive_int();
      expect(Tok::RParen);
      return Range::nat(n);
    }
    fail_here("unexpected " + std::string(describe(cur().kind)), "'[', 'ascii' or 'nat'");
  }

  std::vector<std::string> name_list(Tok separator, const char* what) {
    std::vector<std::string> names;
    do {
      names.push_back(name(what).text);
    } while (accept(separator));
    return names;
  }

  Formula formula(const Token& text) {
    auto result = parse_formula(text.text, text.content);
    if (!result.ok())
      throw SyntaxError{result.errors.front()};
    return *result.formula;
  }

  void restriction() {
    const SourceLoc at = cur().loc;
    ++pos_;
    Restriction r;
    r.loc = at;
    const Token& label = name("restriction label");
    r.label = label.text;
    if (auto [it, fresh] = label_locs_.emplace(r.label, label.loc); !fresh)
      duplicate(label.loc, "restriction label '" + r.label + "'", it->second);
    if (accept_word("on"))
      r.target = name("set name").text;

    if (accept_word("card")) {
      r.body = CardinalityBody{cardinality()};
    } else if (accept_word("range")) {
      const Token& first = name("attribute or Set.attribute");
      std::string attribute = first.text;
      if (accept(Tok::Dot)) {
        attribute = name("attribute name").text;
        if (!r.target.empty() && r.target != first.text)
          syntax_error(first.loc, "range path names '" + first.text + "' but the restriction is on '" + r.target + "'");
        r.target = first.text;
      }
      expect(Tok::Colon);
      r.body = RangeBody{std::move(attribute), range()};
    } else if (accept_word("compulsory")) {
      r.body = CompulsoryBody{name_list(Tok::Comma, "mapping name")};
    } else if (accept_word("unique")) {
      r.body = UniquenessBody{name_list(Tok::Dot, "mapping name")};
    } else if (accept_word("subset_of")) {
      r.body = InclusionBody{name("superset name").text};
    } else if (accept_word("other")) {
      OtherBody body;
      bool any = false;
      for (;;) {
        if (accept_word("informal")) {
          accept(Tok::Colon);
          body.informal = expect(Tok::String).text;
        } else if (accept_word("formal")) {
          accept(Tok::Colon);
          body.formal = formula(expect(Tok::String));
        } else {
          break;
        }
        any = true;
      }
      if (!any)
        fail_here("empty other-restriction", "'informal' or 'formal'");
      r.body = std::move(body);
    } else {
      fail_here("unexpected " + std::string(describe(cur().kind)),
                "'card', 'range', 'compulsory', 'unique', 'subset_of' or 'other'");
    }
    model_.restrictions.push_back(std::move(r));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ERModel model_;
  std::vector<ParseError> errors_;
  std::map<std::string, SourceLoc> set_locs_;
  std::map<std::string, SourceLoc> label_locs_;
};

}  // namespace

ModelParseResult parse_model_syntax(std::string_view source) {
  try {
    return ModelParser(Lexer(source).run()).parse();
  } catch (const SyntaxError& e) {
    return {std::nullopt, {e.error}};
  }
}

ModelParseResult parse_model(std::string_view source) {
  auto result = parse_model_syntax(source);
  if (!result.ok())
    return result;
  const auto errors = validate_model(*result.model);
  if (errors.empty())
    return result;
  ModelParseResult failed;
  for (const auto& e : errors)
    failed.errors.push_back({e.loc.line, e.loc.column, e.message + " [" + e.code + "]", ""});
  return failed;
}

}  // namespace erc
