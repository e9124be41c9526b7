#pragma once

#include <utility>

#include "mathrules/algebra/collect.hpp"
#include "mathrules/algebra/equiv.hpp"
#include "mathrules/equation.hpp"

namespace mathrules {

namespace detail {

struct SignSplit {
  bool negative = false;
  Expr magnitude;
};

/// Peels a leading negation: Neg(x) and negative numeric atoms.
inline SignSplit strip_sign(const Expr& e) {
  if (e.is_neg()) return {true, e.child()};
  if (e.is_numeric() && e.value().is_negative()) {
    Rational v = -e.value();
    return {true, e.atom_kind() == AtomKind::integer ? Expr::integer(v) : Expr::decimal(v)};
  }
  return {false, e};
}

inline bool is_one(const Expr& e) { return e.is_numeric() && e.value() == Rational(1); }
inline bool is_zero_atom(const Expr& e) { return e.is_numeric() && e.value().is_zero(); }

// m * t with m on the left and the combined sign pushed into the chain:
// sky * (-2) becomes a subtracted "sky*2" term.
inline SignedTerm scale_term(const Expr& m, const SignedTerm& t) {
  SignSplit sm = strip_sign(m), st = strip_sign(t.term);
  bool neg = sm.negative ^ st.negative ^ t.negative;
  if (is_one(sm.magnitude)) return {neg, st.magnitude};
  if (is_one(st.magnitude)) return {neg, sm.magnitude};
  return {neg, Expr::bin(BinOp::mul, sm.magnitude, st.magnitude)};
}

// Rebuild that folds purely numeric neighbors ("1+2" becomes "3") but is
// byte-stable on symbolic chains.
inline Expr rebuild_sum_folding(const std::vector<SignedTerm>& terms) {
  if (terms.empty()) return Expr::integer(0);
  SimplifyPolicy pol = SimplifyPolicy::all_off();
  pol.fold_numeric_add = true;
  Expr acc = terms[0].negative ? Expr::neg(terms[0].term) : terms[0].term;
  for (std::size_t i = 1; i < terms.size(); ++i)
    acc = combine(terms[i].negative ? BinOp::sub : BinOp::add, acc, terms[i].term, pol);
  return acc;
}

inline Expr scale_side(const Expr& side, const Expr& m, const Expr& c) {
  std::vector<SignedTerm> out;
  if (!(m.is_numeric() && m.value() == Rational(1))) {
    for (const auto& t : additive_terms(side)) out.push_back(scale_term(m, t));
  } else {
    out = additive_terms(side);
  }
  if (!is_zero_atom(c)) {
    SignSplit sc = strip_sign(c);
    out.push_back({sc.negative, sc.magnitude});
  }
  return rebuild_sum_folding(out);
}

}  // namespace detail

/// m*lhs + c = m*rhs + c, with m distributed over the top-level terms of
/// each side and c appended. m == 1 leaves terms untouched; c == 0 appends
/// nothing.
inline Equation equation_affine(const Equation& eq, const Expr& m, const Expr& c) {
  return {detail::scale_side(eq.lhs, m, c), detail::scale_side(eq.rhs, m, c)};
}

/// w1*e1 + w2*e2, each product distributed over top-level terms. A zero
/// weight contributes nothing.
inline Equation combine_equations(const Equation& e1, const Equation& e2, const Expr& w1,
                                  const Expr& w2) {
  auto side = [](const Expr& a, const Expr& wa, const Expr& b, const Expr& wb) {
    std::vector<SignedTerm> out;
    if (!detail::is_zero_atom(wa)) {
      if (detail::is_one(wa))
        out = additive_terms(a);
      else
        for (const auto& t : additive_terms(a)) out.push_back(detail::scale_term(wa, t));
    }
    if (!detail::is_zero_atom(wb)) {
      for (const auto& t : additive_terms(b)) {
        if (detail::is_one(wb))
          out.push_back(t);
        else
          out.push_back(detail::scale_term(wb, t));
      }
    }
    return detail::rebuild_sum_folding(out);
  };
  return {side(e1.lhs, w1, e2.lhs, w2), side(e1.rhs, w1, e2.rhs, w2)};
}

/// lhs - rhs = 0 as merged monomials.
inline std::vector<Monomial> standard_form_monomials(const Equation& eq) {
  std::vector<Monomial> ms = monomials_of(eq.lhs);
  for (auto m : monomials_of(eq.rhs)) {
    m.coef = -m.coef;
    ms.push_back(std::move(m));
  }
  return merge_monomials(ms);
}

/// Standard form + cancellation + factoring in one step: the rhs becomes 0,
/// terms common to both sides cancel, and the remaining lhs goes through
/// factor_common.
inline Equation equation_simplify(const Equation& eq) {
  std::vector<Monomial> residual = standard_form_monomials(eq);
  return {factor_common(monomials_to_expr(residual)), Expr::integer(0)};
}

/// Residual-based equivalence: both sides standardized, residual =
/// factor_common(lhs1 - lhs2); equivalent iff the residual is identically
/// zero. Scalar multiples are NOT equivalent under this definition.
inline std::pair<bool, Expr> equations_equivalent(const Equation& e1, const Equation& e2,
                                                  const EquivConfig& cfg = {}) {
  std::vector<Monomial> d = standard_form_monomials(e1);
  for (auto m : standard_form_monomials(e2)) {
    m.coef = -m.coef;
    d.push_back(std::move(m));
  }
  d = merge_monomials(d);
  if (d.empty()) return {true, Expr::integer(0)};
  Expr residual_raw = monomials_to_expr(d);
  if (equivalent(residual_raw, Expr::integer(0), cfg)) return {true, Expr::integer(0)};
  return {false, factor_common(residual_raw)};
}

namespace detail {

inline Expr substitute_expr(const Expr& e, const std::vector<std::pair<std::string, Expr>>& subs,
                            const SimplifyPolicy& pol) {
  switch (e.tag()) {
    case Expr::Tag::atom:
      if (e.is_name()) {
        for (const auto& [n, v] : subs)
          if (n == e.name_token()) return v;
      }
      return e;
    case Expr::Tag::neg: {
      Expr c = substitute_expr(e.child(), subs, pol);
      if (c == e.child()) return e;
      return c.is_numeric() ? negate(c) : Expr::neg(c);
    }
    case Expr::Tag::group: {
      Expr c = substitute_expr(e.child(), subs, pol);
      return c == e.child() ? e : Expr::group(c);
    }
    case Expr::Tag::bin: {
      Expr l = substitute_expr(e.lhs(), subs, pol);
      Expr r = substitute_expr(e.rhs(), subs, pol);
      if (l == e.lhs() && r == e.rhs()) return e;
      return combine(e.op(), l, r, pol);
    }
  }
  return e;
}

}  // namespace detail

/// Single-pass substitution of named leaves; no re-simplification beyond
/// numeric folds. An empty assumption list returns the input unchanged.
inline Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Expr>>& subs) {
  SimplifyPolicy pol = SimplifyPolicy::all_off();
  pol.fold_numeric_add = pol.fold_numeric_mul = true;
  return detail::substitute_expr(e, subs, pol);
}

inline Equation substitute(const Equation& eq,
                           const std::vector<std::pair<std::string, Expr>>& subs) {
  return {substitute(eq.lhs, subs), substitute(eq.rhs, subs)};
}

}  // namespace mathrules
