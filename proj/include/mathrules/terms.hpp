#pragma once

#include <vector>

#include "mathrules/expr.hpp"

namespace mathrules {

struct SignedTerm {
  bool negative = false;
  Expr term;
};

/// Splits at top-level '+'/'-' in left-to-right order. A direct Neg operand
/// contributes its child with a flipped sign; everything else (including
/// negative numeric leaves inside products) stays inside the term.
inline void additive_terms(const Expr& e, bool negate_all, std::vector<SignedTerm>& out) {
  if (e.is_bin(BinOp::add)) {
    additive_terms(e.lhs(), negate_all, out);
    additive_terms(e.rhs(), negate_all, out);
    return;
  }
  if (e.is_bin(BinOp::sub)) {
    additive_terms(e.lhs(), negate_all, out);
    additive_terms(e.rhs(), !negate_all, out);
    return;
  }
  if (e.is_neg()) {
    out.push_back({!negate_all, e.child()});
    return;
  }
  out.push_back({negate_all, e});
}

inline std::vector<SignedTerm> additive_terms(const Expr& e) {
  std::vector<SignedTerm> out;
  additive_terms(e, false, out);
  return out;
}

/// Rebuilds a left-leaning +/- chain. Inverse of additive_terms on
/// generator-produced chains (byte-stable through render).
inline Expr rebuild_sum(const std::vector<SignedTerm>& terms) {
  if (terms.empty()) return Expr::integer(0);
  Expr acc = terms[0].negative ? Expr::neg(terms[0].term) : terms[0].term;
  for (std::size_t i = 1; i < terms.size(); ++i)
    acc = Expr::bin(terms[i].negative ? BinOp::sub : BinOp::add, acc, terms[i].term);
  return acc;
}

/// Top-level '*' factors in left-to-right order.
inline void multiplicative_terms(const Expr& e, std::vector<Expr>& out) {
  if (e.is_bin(BinOp::mul)) {
    multiplicative_terms(e.lhs(), out);
    multiplicative_terms(e.rhs(), out);
    return;
  }
  out.push_back(e);
}

inline std::vector<Expr> multiplicative_terms(const Expr& e) {
  std::vector<Expr> out;
  multiplicative_terms(e, out);
  return out;
}

inline Expr rebuild_product(const std::vector<Expr>& factors) {
  if (factors.empty()) return Expr::integer(1);
  Expr acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = Expr::bin(BinOp::mul, acc, factors[i]);
  return acc;
}

/// terms_of per the Add-or-Mul contract: Add returns signed terms, Mul
/// returns factors with positive signs.
inline std::vector<SignedTerm> terms_of(const Expr& e, BinOp op) {
  if (op == BinOp::add) return additive_terms(e);
  std::vector<SignedTerm> out;
  for (const Expr& f : multiplicative_terms(e)) out.push_back({false, f});
  return out;
}

}  // namespace mathrules
