#include <cctype>
#include <string>

#include "kvar/mpoly.hpp"

namespace kvar {

namespace {

struct Token {
  enum Kind { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
  std::string text;
  long pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    long pos = static_cast<long>(i_);
    if (i_ >= text_.size()) {
      tok_ = {Token::End, "", pos};
      return;
    }
    char c = text_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      tok_ = {Token::Int, std::string(text_.substr(i_, j - i_)), pos};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      tok_ = {Token::Ident, std::string(text_.substr(i_, j - i_)), pos};
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Token::Plus, "+", pos}; return;
      case '-': tok_ = {Token::Minus, "-", pos}; return;
      case '*': tok_ = {Token::Star, "*", pos}; return;
      case '^': tok_ = {Token::Caret, "^", pos}; return;
      case '(': tok_ = {Token::LParen, "(", pos}; return;
      case ')': tok_ = {Token::RParen, ")", pos}; return;
      default:
        fail(Errc::SyntaxError, std::string("unexpected character '") + c + "'", pos);
    }
  }

  std::string_view text_;
  size_t i_ = 0;
  Token tok_{Token::End, "", 0};
};

class Parser {
 public:
  Parser(std::string_view text, int num_vars, const VarResolver& resolver)
      : lex_(text), num_vars_(num_vars), resolver_(resolver) {}

  MPoly run() {
    MPoly f = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End)
      fail(Errc::SyntaxError, "unexpected '" + t.text + "'", t.pos);
    return f;
  }

 private:
  MPoly expr() {
    MPoly acc = term();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Plus) {
        lex_.take();
        acc = acc + term();
      } else if (k == Token::Minus) {
        lex_.take();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      acc = acc * factor();
    }
    return acc;
  }

  MPoly factor() {
    int sign = 1;
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      if (lex_.take().kind == Token::Minus) sign = -sign;
    }
    MPoly base = atom();
    if (lex_.peek().kind == Token::Caret) {
      Token caret = lex_.take();
      const Token& e = lex_.peek();
      if (e.kind == Token::Minus)
        fail(Errc::ExponentNegative, "exponent must be nonnegative", e.pos);
      if (e.kind != Token::Int)
        fail(Errc::SyntaxError, "expected integer exponent after '^'", caret.pos);
      Token et = lex_.take();
      unsigned long exp = 0;
      try {
        exp = std::stoul(et.text);
      } catch (...) {
        fail(Errc::SyntaxError, "exponent too large", et.pos);
      }
      if (exp > 1'000'000) fail(Errc::SyntaxError, "exponent too large", et.pos);
      base = base.pow(static_cast<unsigned>(exp));
    }
    return sign < 0 ? -base : base;
  }

  MPoly atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Int:
        return MPoly::constant(num_vars_, int_from_string(t.text));
      case Token::Ident: {
        std::optional<int> idx = resolver_(t.text);
        if (!idx)
          fail(Errc::UnknownVariable, "unknown variable '" + t.text + "'", t.pos);
        return MPoly::variable(num_vars_, *idx);
      }
      case Token::LParen: {
        MPoly inner = expr();
        const Token& r = lex_.peek();
        if (r.kind != Token::RParen) fail(Errc::SyntaxError, "expected ')'", r.pos);
        lex_.take();
        return inner;
      }
      default:
        fail(Errc::SyntaxError, "expected a number, variable or '('", t.pos);
    }
  }

  Lexer lex_;
  int num_vars_;
  const VarResolver& resolver_;
};

}  // namespace

MPoly poly_parse(std::string_view text, int num_vars, const VarResolver& resolver) {
  if (num_vars < 0) fail(Errc::BadInput, "num_vars must be nonnegative");
  return Parser(text, num_vars, resolver).run();
}

MPoly poly_parse(std::string_view text, int num_vars) {
  VarResolver xnames = [num_vars](const std::string& name) -> std::optional<int> {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    for (size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    unsigned long idx = 0;
    try {
      idx = std::stoul(name.substr(1));
    } catch (...) {
      return std::nullopt;
    }
    if (idx >= static_cast<unsigned long>(num_vars)) return std::nullopt;
    return static_cast<int>(idx);
  };
  return poly_parse(text, num_vars, xnames);
}

}  // namespace kvar
