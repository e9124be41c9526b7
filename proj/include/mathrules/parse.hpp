#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mathrules/equation.hpp"
#include "mathrules/expr.hpp"
#include "mathrules/render.hpp"

namespace mathrules {

using NameSet = std::set<std::string>;

namespace detail {

enum class TokKind { number, name, op, lparen, rparen, equals, end };

struct Token {
  TokKind kind = TokKind::end;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  Lexer(std::string_view text, const NameSet* known) : text_(text), known_(known) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    if (i_ >= text_.size()) {
      cur_ = {TokKind::end, "", i_};
      return;
    }
    char c = text_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      if (j < text_.size() && text_[j] == '.' && j + 1 < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[j + 1]))) {
        ++j;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      }
      cur_ = {TokKind::number, std::string(text_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    switch (c) {
      case '(': cur_ = {TokKind::lparen, "(", i_}; ++i_; return;
      case ')': cur_ = {TokKind::rparen, ")", i_}; ++i_; return;
      case '=': cur_ = {TokKind::equals, "=", i_}; ++i_; return;
      case '+': case '-': case '*': case '/': case '^':
        cur_ = {TokKind::op, std::string(1, c), i_};
        ++i_;
        return;
      default: break;
    }
    if (is_reserved_char(c))
      raise(errc::parse_error, "unexpected character '" + std::string(1, c) + "' at position " +
                                   std::to_string(i_));
    std::size_t j = i_;
    while (j < text_.size() && !is_reserved_char(text_[j])) ++j;
    std::string run(text_.substr(i_, j - i_));
    if (known_ && !known_->empty() && !known_->count(run) && segmentable(run, *known_))
      raise(errc::ambiguous_name,
            "'" + run + "' at position " + std::to_string(i_) +
                " is a concatenation of known names");
    cur_ = {TokKind::name, std::move(run), i_};
    i_ = j;
  }

  static bool segmentable(const std::string& run, const NameSet& known) {
    std::vector<char> ok(run.size() + 1, 0);
    ok[0] = 1;
    for (std::size_t i = 0; i < run.size(); ++i) {
      if (!ok[i]) continue;
      for (const auto& n : known) {
        if (n.empty() || i + n.size() > run.size()) continue;
        if (run.compare(i, n.size(), n) == 0) ok[i + n.size()] = 1;
      }
    }
    return ok[run.size()];
  }

  std::string_view text_;
  const NameSet* known_;
  std::size_t i_ = 0;
  Token cur_;
};

// A parsed operand plus whether the source wrapped it in parentheses. When
// the parens turn out redundant for the surrounding operator, the tree keeps
// them as a Group node so that rendering reproduces the input bytes.
struct Operand {
  Expr expr;
  bool parenthesized = false;
};

class Parser {
 public:
  Parser(std::string_view text, const NameSet* known) : lex_(text, known) {}

  // expr or equation (single '=').
  std::pair<Expr, std::optional<Expr>> parse_any() {
    Operand l = parse_bp(0);
    if (lex_.peek().kind == TokKind::equals) {
      lex_.take();
      Operand r = parse_bp(0);
      expect_end();
      return {finish_top(l), finish_top(r)};
    }
    expect_end();
    return {finish_top(l), std::nullopt};
  }

 private:
  void expect_end() {
    if (lex_.peek().kind != TokKind::end)
      raise(errc::parse_error,
            "unexpected trailing input at position " + std::to_string(lex_.peek().pos));
  }

  static Expr finish_top(const Operand& o) {
    // Parens around a whole expression are always redundant.
    return o.parenthesized ? Expr::group(o.expr) : o.expr;
  }

  // Left/right binding powers: '^' binds right, the rest bind left, and
  // unary '-' sits between '*' and '^'.
  static bool led_bp(const Token& t, int& lbp, int& rbp) {
    if (t.kind != TokKind::op) return false;
    switch (t.text[0]) {
      case '+': case '-': lbp = 10; rbp = 11; return true;
      case '*': case '/': lbp = 20; rbp = 21; return true;
      case '^': lbp = 41; rbp = 40; return true;
    }
    return false;
  }

  static Expr literal(const Token& t) {
    Rational v = Rational::from_decimal_string(t.text);
    return t.text.find('.') != std::string::npos ? Expr::decimal(v) : Expr::integer(v);
  }

  Operand parse_primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case TokKind::number:
        return {literal(t), false};
      case TokKind::name:
        return {Expr::name(t.text), false};
      case TokKind::lparen: {
        Operand inner = parse_bp(0);
        if (lex_.peek().kind != TokKind::rparen)
          raise(errc::parse_error, "missing ')' at position " + std::to_string(lex_.peek().pos));
        lex_.take();
        // Nested "((x))" keeps each pair.
        return {finish_top(inner), true};
      }
      case TokKind::op:
        if (t.text == "-") return parse_negation();
        [[fallthrough]];
      default:
        raise(errc::parse_error, "expected an operand at position " + std::to_string(t.pos));
    }
  }

  Operand parse_negation() {
    // "-12" reads as a negative literal unless '^' follows, so that -2^2
    // stays -(2^2) per '^' binding tighter than unary minus.
    if (lex_.peek().kind == TokKind::number) {
      Token num = lex_.take();
      if (lex_.peek().kind == TokKind::op && lex_.peek().text == "^") {
        Operand rest = parse_bp(30, Operand{literal(num), false});
        return {Expr::neg(unwrap_under_neg(rest)), false};
      }
      Rational v = -Rational::from_decimal_string(num.text);
      bool dec = num.text.find('.') != std::string::npos;
      return {dec ? Expr::decimal(v) : Expr::integer(v), false};
    }
    Operand o = parse_bp(30);
    return {Expr::neg(unwrap_under_neg(o)), false};
  }

  // Negation always parenthesizes a non-atomic child, so such parens are
  // forced; parens around an atom under '-' are redundant.
  static Expr unwrap_under_neg(const Operand& o) {
    if (!o.parenthesized) return o.expr;
    if (!o.expr.is_atom()) return o.expr;
    return Expr::group(o.expr);
  }

  static Expr resolve(const Operand& o, BinOp op, Side side) {
    if (!o.parenthesized) return o.expr;
    return needs_parens(o.expr, op, side) ? o.expr : Expr::group(o.expr);
  }

  Operand parse_bp(int min_bp) { return parse_bp(min_bp, parse_primary()); }

  Operand parse_bp(int min_bp, Operand left) {
    for (;;) {
      int lbp = 0, rbp = 0;
      if (!led_bp(lex_.peek(), lbp, rbp) || lbp < min_bp) return left;
      Token op = lex_.take();
      BinOp b;
      switch (op.text[0]) {
        case '+': b = BinOp::add; break;
        case '-': b = BinOp::sub; break;
        case '*': b = BinOp::mul; break;
        case '/': b = BinOp::div; break;
        default: b = BinOp::pow; break;
      }
      Operand right = parse_bp(rbp);
      left = {Expr::bin(b, resolve(left, b, Side::left), resolve(right, b, Side::right)), false};
    }
  }

  Lexer lex_;
};

}  // namespace detail

/// Parses an expression. `known_names` enables segmentation checks for
/// multi-token variable names (AmbiguousName when a run of characters is a
/// concatenation of known names).
inline Expr parse_expression(std::string_view text, const NameSet* known_names = nullptr) {
  detail::Parser p(text, known_names);
  auto [lhs, rhs] = p.parse_any();
  if (rhs) raise(errc::parse_error, "unexpected '=' in expression");
  return lhs;
}

inline Equation parse_equation(std::string_view text, const NameSet* known_names = nullptr) {
  detail::Parser p(text, known_names);
  auto [lhs, rhs] = p.parse_any();
  if (!rhs) raise(errc::parse_error, "missing '=' in equation");
  return Equation{lhs, *rhs};
}

struct ParsedText {
  std::optional<Expr> expr;
  std::optional<Equation> equation;

  bool is_equation() const { return equation.has_value(); }
};

/// Expression or single-'=' equation.
inline ParsedText parse_any(std::string_view text, const NameSet* known_names = nullptr) {
  detail::Parser p(text, known_names);
  auto [lhs, rhs] = p.parse_any();
  ParsedText out;
  if (rhs)
    out.equation = Equation{lhs, *rhs};
  else
    out.expr = lhs;
  return out;
}

}  // namespace mathrules
