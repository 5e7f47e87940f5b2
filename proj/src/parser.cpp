#include "exchg/parser.hpp"

#include <cctype>
#include <set>

#include "exchg/sep.hpp"

namespace exchg {

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long long value = 0;  // Int only
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    current_ = Token{};
    current_.offset = pos_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      current_.kind = Token::Kind::Ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t start = pos_;
      if (c == '-') ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      current_.kind = Token::Kind::Int;
      current_.text = text_.substr(start, pos_ - start);
      current_.value = std::stoll(current_.text);
      return;
    }
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',') {
      current_.kind = Token::Kind::Punct;
      current_.text = std::string(1, c);
      ++pos_;
      return;
    }
    throw ParseError("stray character '" + std::string(1, c) + "' at byte " +
                         std::to_string(pos_),
                     pos_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_;
};

[[noreturn]] void fail(const Token& got, const std::string& expected) {
  std::string shown = got.kind == Token::Kind::End ? "end of input"
                                                   : "'" + got.text + "'";
  throw ParseError("expected " + expected + " but found " + shown +
                       " at byte " + std::to_string(got.offset),
                   got.offset);
}

void expect_punct(Lexer& lex, char c) {
  if (lex.peek().kind != Token::Kind::Punct || lex.peek().text[0] != c)
    fail(lex.peek(), std::string("'") + c + "'");
  lex.take();
}

int expect_int(Lexer& lex, const std::string& what) {
  if (lex.peek().kind != Token::Kind::Int) fail(lex.peek(), what);
  return static_cast<int>(lex.take().value);
}

std::string expect_ident(Lexer& lex, const std::string& what) {
  if (lex.peek().kind != Token::Kind::Ident) fail(lex.peek(), what);
  return lex.take().text;
}

IndexingSystem parse_is(Lexer& lex);
DataStructure parse_ds(Lexer& lex);

int int_argument(Lexer& lex) {
  expect_punct(lex, '(');
  int k = expect_int(lex, "an integer argument");
  expect_punct(lex, ')');
  return k;
}

IndexingSystem parse_is(Lexer& lex) {
  Token head = lex.peek();
  std::string name = expect_ident(lex, "an indexing-system constructor");
  if (name == "id") return IndexingSystem::id();
  if (name == "powerset") return IndexingSystem::powerset();
  if (name == "dtuples_star") return IndexingSystem::dtuples_star();
  if (name == "subsets") return IndexingSystem::subsets(int_argument(lex));
  if (name == "subsets_le") return IndexingSystem::subsets_le(int_argument(lex));
  if (name == "tuples") return IndexingSystem::tuples(int_argument(lex));
  if (name == "dtuples") return IndexingSystem::dtuples(int_argument(lex));
  if (name == "pair") return IndexingSystem::pair_slots(int_argument(lex));
  if (name == "product" || name == "coproduct" || name == "compose") {
    expect_punct(lex, '(');
    IndexingSystem lhs = parse_is(lex);
    expect_punct(lex, ',');
    IndexingSystem rhs = parse_is(lex);
    expect_punct(lex, ')');
    if (name == "product") return IndexingSystem::product(lhs, rhs);
    if (name == "coproduct") return IndexingSystem::coproduct(lhs, rhs);
    return IndexingSystem::compose(lhs, rhs);
  }
  fail(head, "an indexing-system constructor");
}

std::vector<int> parse_alphabet(Lexer& lex) {
  expect_punct(lex, '{');
  std::vector<int> syms;
  if (!(lex.peek().kind == Token::Kind::Punct && lex.peek().text == "}")) {
    syms.push_back(expect_int(lex, "an alphabet symbol"));
    while (lex.peek().kind == Token::Kind::Punct && lex.peek().text == ",") {
      lex.take();
      syms.push_back(expect_int(lex, "an alphabet symbol"));
    }
  }
  expect_punct(lex, '}');
  return syms;
}

DataStructure parse_ds(Lexer& lex) {
  Token head = lex.peek();
  std::string name = expect_ident(lex, "a data-structure constructor");
  if (name == "setsystem") return DataStructure::setsystem();
  if (name == "graph1") return DataStructure::graph1();
  if (name == "graph2") return DataStructure::graph2();
  if (name == "graph3") return DataStructure::graph3();
  if (name == "binrel") return DataStructure::binrel();
  if (name == "total") return DataStructure::total();
  if (name == "array") {
    expect_punct(lex, '(');
    std::vector<int> alphabet = parse_alphabet(lex);
    expect_punct(lex, ',');
    IndexingSystem is = parse_is(lex);
    expect_punct(lex, ')');
    return DataStructure::array(std::move(alphabet), std::move(is));
  }
  if (name == "product" || name == "coproduct") {
    expect_punct(lex, '(');
    DataStructure lhs = parse_ds(lex);
    expect_punct(lex, ',');
    DataStructure rhs = parse_ds(lex);
    expect_punct(lex, ')');
    return name == "product" ? DataStructure::product(lhs, rhs)
                             : DataStructure::coproduct(lhs, rhs);
  }
  if (name == "composeI") {
    expect_punct(lex, '(');
    DataStructure base = parse_ds(lex);
    expect_punct(lex, ',');
    IndexingSystem is = parse_is(lex);
    expect_punct(lex, ')');
    return DataStructure::compose_with(std::move(base), std::move(is));
  }
  if (name == "sub") {
    expect_punct(lex, '(');
    DataStructure base = parse_ds(lex);
    expect_punct(lex, ',');
    std::string pred = expect_ident(lex, "a predicate name");
    expect_punct(lex, ')');
    return DataStructure::sub(std::move(base), pred);
  }
  if (name == "env") {
    expect_punct(lex, '(');
    DataStructure base = parse_ds(lex);
    expect_punct(lex, ',');
    int m = expect_int(lex, "an environment count");
    expect_punct(lex, ')');
    return DataStructure::env_extend(std::move(base), m);
  }
  if (name == "sep_c1" || name == "sep_c2") {
    expect_punct(lex, '(');
    DataStructure base = parse_ds(lex);
    expect_punct(lex, ',');
    int k = expect_int(lex, "an axis count");
    expect_punct(lex, ')');
    return build_separate(base, k,
                          name == "sep_c1" ? SepMode::Diagonal : SepMode::Slotted);
  }
  fail(head, "a data-structure constructor");
}

void expect_end(Lexer& lex) {
  if (lex.peek().kind != Token::Kind::End) fail(lex.peek(), "end of input");
}

}  // namespace

IndexingSystem parse_indexing(const std::string& text) {
  Lexer lex(text);
  IndexingSystem is = parse_is(lex);
  expect_end(lex);
  return is;
}

DataStructure parse_structure(const std::string& text) {
  Lexer lex(text);
  DataStructure ds = parse_ds(lex);
  expect_end(lex);
  return ds;
}

std::variant<DataStructure, IndexingSystem> parse_expression(
    const std::string& text) {
  static const std::set<std::string> is_only = {
      "id",      "powerset", "subsets",      "subsets_le", "tuples",
      "dtuples", "dtuples_star", "pair",     "compose"};
  Lexer probe(text);
  if (probe.peek().kind == Token::Kind::Ident &&
      is_only.count(probe.peek().text))
    return parse_indexing(text);
  try {
    return parse_structure(text);
  } catch (const ParseError&) {
    return parse_indexing(text);
  }
}

}  // namespace exchg
