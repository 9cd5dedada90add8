#include <charconv>
#include <cmath>
#include <optional>
#include <vector>

#include "nl2f/error.hpp"
#include "nl2f/formula.hpp"
#include "text_util.hpp"

namespace nl2f::formula {

namespace {

enum class Tok { Number, String, ColumnRef, Ident, ErrorLiteral, LParen, RParen, Comma, Op, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;  // decoded payload for String/ColumnRef, spelling otherwise
  double number = 0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c) || c == '.'; }

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t pos) : src_(src), pos_(pos) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, src_.size(), {}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  Token next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) return number();
    if (c == '"') return string_literal();
    if (c == '[') return column_ref();
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return {Tok::Ident, start, std::string(src_.substr(start, pos_ - start))};
    }
    if (c == '#') return error_literal();
    ++pos_;
    switch (c) {
      case '(': return {Tok::LParen, start, "("};
      case ')': return {Tok::RParen, start, ")"};
      case ',': return {Tok::Comma, start, ","};
      case '+':
      case '-':
      case '*':
      case '/':
      case '&':
      case '=': return {Tok::Op, start, std::string(1, c)};
      case '<':
        if (pos_ < src_.size() && (src_[pos_] == '>' || src_[pos_] == '=')) return {Tok::Op, start, std::string{c, src_[pos_++]}};
        return {Tok::Op, start, "<"};
      case '>':
        if (pos_ < src_.size() && src_[pos_] == '=') return {Tok::Op, start, std::string{c, src_[pos_++]}};
        return {Tok::Op, start, ">"};
      default: break;
    }
    throw FormulaSyntaxError(start, std::string("unexpected character '") + c + "'");
  }

  Token number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        while (p < src_.size() && is_digit(src_[p])) ++p;
        pos_ = p;
      }
    }
    const std::string_view spelling = src_.substr(start, pos_ - start);
    double value = 0;
    auto [ptr, ec] = std::from_chars(spelling.data(), spelling.data() + spelling.size(), value);
    if (ec != std::errc() || ptr != spelling.data() + spelling.size() || !std::isfinite(value)) {
      throw FormulaSyntaxError(start, "numeric literal out of range");
    }
    return {Tok::Number, start, std::string(spelling), value};
  }

  Token string_literal() {
    const std::size_t start = pos_++;
    std::string value;
    for (;;) {
      if (pos_ >= src_.size()) throw FormulaSyntaxError(start, "unterminated string literal");
      const char c = src_[pos_++];
      if (c == '"') {
        if (pos_ < src_.size() && src_[pos_] == '"') {
          value.push_back('"');
          ++pos_;
          continue;
        }
        return {Tok::String, start, std::move(value)};
      }
      value.push_back(c);
    }
  }

  Token column_ref() {
    const std::size_t start = pos_++;
    std::string value;
    for (;;) {
      if (pos_ >= src_.size()) throw FormulaSyntaxError(start, "unterminated column reference");
      const char c = src_[pos_++];
      if (c == ']') {
        if (pos_ < src_.size() && src_[pos_] == ']') {
          value.push_back(']');
          ++pos_;
          continue;
        }
        if (value.empty()) throw FormulaSyntaxError(start, "empty column reference");
        return {Tok::ColumnRef, start, std::move(value)};
      }
      value.push_back(c);
    }
  }

  Token error_literal() {
    const std::size_t start = pos_;
    for (std::string_view code : {error_code::kDivZero, error_code::kValue, error_code::kName, error_code::kNotAvailable}) {
      if (src_.substr(start, code.size()) == code) {
        pos_ += code.size();
        return {Tok::ErrorLiteral, start, std::string(code)};
      }
    }
    throw FormulaSyntaxError(start, "unknown error literal");
  }

  std::string_view src_;
  std::size_t pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Ast parse_formula() {
    Ast ast = comparison();
    if (peek().kind == Tok::RParen) throw FormulaSyntaxError(peek().offset, "unbalanced parentheses: unexpected ')'");
    if (peek().kind != Tok::End) throw FormulaSyntaxError(peek().offset, "unexpected '" + peek().text + "'");
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() {
    last_offset_ = toks_[pos_].offset;
    return toks_[pos_++];
  }
  bool at_op(std::string_view op) const { return peek().kind == Tok::Op && peek().text == op; }

  [[noreturn]] void unexpected() const {
    if (peek().kind == Tok::End) throw FormulaSyntaxError(last_offset_, "unexpected end of formula");
    if (peek().kind == Tok::RParen) throw FormulaSyntaxError(peek().offset, "unbalanced parentheses: unexpected ')'");
    throw FormulaSyntaxError(peek().offset, "unexpected '" + peek().text + "'");
  }

  void expect_close(std::size_t open_offset) {
    if (peek().kind == Tok::RParen) {
      advance();
      return;
    }
    if (peek().kind == Tok::End) {
      throw FormulaSyntaxError(open_offset, "unbalanced parentheses: '(' is never closed");
    }
    throw FormulaSyntaxError(peek().offset, "expected ')' or ',' but found '" + peek().text + "'");
  }

  Ast comparison() {
    Ast lhs = concat();
    for (;;) {
      std::optional<BinaryOperator> op;
      if (at_op("=")) op = BinaryOperator::Equal;
      else if (at_op("<>")) op = BinaryOperator::NotEqual;
      else if (at_op("<")) op = BinaryOperator::Less;
      else if (at_op("<=")) op = BinaryOperator::LessEqual;
      else if (at_op(">")) op = BinaryOperator::Greater;
      else if (at_op(">=")) op = BinaryOperator::GreaterEqual;
      if (!op) return lhs;
      advance();
      lhs = binary(*op, std::move(lhs), concat());
    }
  }

  Ast concat() {
    Ast lhs = additive();
    while (at_op("&")) {
      advance();
      lhs = binary(BinaryOperator::Concat, std::move(lhs), additive());
    }
    return lhs;
  }

  Ast additive() {
    Ast lhs = term();
    for (;;) {
      if (at_op("+")) {
        advance();
        lhs = binary(BinaryOperator::Add, std::move(lhs), term());
      } else if (at_op("-")) {
        advance();
        lhs = binary(BinaryOperator::Subtract, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Ast term() {
    Ast lhs = prefix();
    for (;;) {
      if (at_op("*")) {
        advance();
        lhs = binary(BinaryOperator::Multiply, std::move(lhs), prefix());
      } else if (at_op("/")) {
        advance();
        lhs = binary(BinaryOperator::Divide, std::move(lhs), prefix());
      } else {
        return lhs;
      }
    }
  }

  Ast prefix() {
    if (at_op("-")) {
      advance();
      // A minus directly in front of a numeric literal is part of the constant.
      if (peek().kind == Tok::Number) return number(-advance().number);
      return unary(UnaryOperator::Negate, prefix());
    }
    if (at_op("+")) {
      advance();
      return unary(UnaryOperator::Plus, prefix());
    }
    return primary();
  }

  Ast primary() {
    switch (peek().kind) {
      case Tok::Number: return number(advance().number);
      case Tok::String: return text(advance().text);
      case Tok::ColumnRef: return column(advance().text);
      case Tok::ErrorLiteral: return constant(CellValue::error(advance().text));
      case Tok::LParen: {
        const std::size_t open = advance().offset;
        Ast inner = comparison();
        expect_close(open);
        return inner;
      }
      case Tok::Ident: return identifier();
      default: unexpected();
    }
  }

  Ast identifier() {
    const Token& ident = advance();
    if (peek().kind == Tok::LParen) {
      const std::size_t open = advance().offset;
      std::vector<Ast> args;
      if (peek().kind == Tok::RParen) {
        advance();
        return call(to_upper(ident.text), std::move(args));
      }
      for (;;) {
        args.push_back(comparison());
        if (peek().kind == Tok::Comma) {
          advance();
          continue;
        }
        expect_close(open);
        return call(to_upper(ident.text), std::move(args));
      }
    }
    if (iequals(ident.text, "TRUE")) return constant(CellValue::boolean(true));
    if (iequals(ident.text, "FALSE")) return constant(CellValue::boolean(false));
    throw FormulaSyntaxError(ident.offset, "unknown name '" + ident.text + "' (columns are written [Header])");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t last_offset_ = 0;
};

}  // namespace

Ast parse(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && is_space(text[pos])) ++pos;
  if (pos < text.size() && text[pos] == '=') ++pos;
  std::size_t body = pos;
  while (body < text.size() && is_space(text[body])) ++body;
  if (body >= text.size()) throw FormulaSyntaxError(0, "empty formula");
  return Parser(Lexer(text, pos).run()).parse_formula();
}

}  // namespace nl2f::formula
