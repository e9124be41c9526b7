#pragma once

#include <string>

#include "mathrules/equation.hpp"
#include "mathrules/expr.hpp"

namespace mathrules {

/// String conventions shared by generation and grading. Rendering is a pure
/// function of the tree; canonical strings re-parse to the same tree.
struct RenderConventions {
  std::string equation_open = ";";
  std::string equation_close = ";";
  std::string system_open = ";[;";
  std::string system_close = ";];";
  std::string system_row_sep = ";;";
};

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.tag()) {
    case Expr::Tag::atom:
    case Expr::Tag::group: return 100;
    case Expr::Tag::neg: return 30;
    case Expr::Tag::bin:
      switch (e.op()) {
        case BinOp::add:
        case BinOp::sub: return 10;
        case BinOp::mul:
        case BinOp::div: return 20;
        case BinOp::pow: return 40;
      }
  }
  return 100;
}

enum class Side { left, right, none };

// Minimal parenthesization: a child is wrapped exactly when leaving the
// parens off would re-parse to a different tree.
inline bool needs_parens(const Expr& child, BinOp parent, Side side) {
  int pp = parent == BinOp::add || parent == BinOp::sub ? 10
           : parent == BinOp::mul || parent == BinOp::div ? 20
                                                          : 40;
  int cp = precedence(child);
  if (child.is_numeric() && child.value().is_negative())
    return parent == BinOp::pow && side == Side::left;  // (-3)^2
  if (cp > pp) return false;
  if (cp < pp) return true;
  // Equal precedence: + - * / associate left, ^ associates right.
  if (parent == BinOp::pow) return side == Side::left;
  return side == Side::right;
}

inline void render_expr(const Expr& e, std::string& out) {
  switch (e.tag()) {
    case Expr::Tag::atom:
      switch (e.atom_kind()) {
        case AtomKind::integer: out += e.value().to_string(); break;
        case AtomKind::decimal: out += e.value().to_decimal_string(); break;
        case AtomKind::name: out += e.name_token(); break;
      }
      return;
    case Expr::Tag::neg: {
      Expr c = e.child();
      out += '-';
      if (c.is_atom() || c.is_group()) {
        render_expr(c, out);
      } else {
        out += '(';
        render_expr(c, out);
        out += ')';
      }
      return;
    }
    case Expr::Tag::group:
      out += '(';
      render_expr(e.child(), out);
      out += ')';
      return;
    case Expr::Tag::bin: {
      auto wrap = [&out](const Expr& c, bool parens) {
        if (parens) {
          out += '(';
          render_expr(c, out);
          out += ')';
        } else {
          render_expr(c, out);
        }
      };
      wrap(e.lhs(), needs_parens(e.lhs(), e.op(), Side::left));
      out += binop_symbol(e.op());
      wrap(e.rhs(), needs_parens(e.rhs(), e.op(), Side::right));
      return;
    }
  }
}

}  // namespace detail

inline std::string render(const Expr& e) {
  std::string out;
  detail::render_expr(e, out);
  return out;
}

inline std::string render(const Equation& eq) {
  return render(eq.lhs) + "=" + render(eq.rhs);
}

/// ";lhs=rhs;" — the encapsulation used by the equation-manipulation rules.
inline std::string render_wrapped(const Equation& eq, const RenderConventions& conv = {}) {
  return conv.equation_open + render(eq) + conv.equation_close;
}

/// ";[;eq1;;eq2;];"
inline std::string render(const EquationSystem& sys, const RenderConventions& conv = {}) {
  std::string out = conv.system_open;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    if (i) out += conv.system_row_sep;
    out += render(sys.rows[i]);
  }
  out += conv.system_close;
  return out;
}

}  // namespace mathrules
