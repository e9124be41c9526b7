#pragma once

#include "mathrules/algebra/equation_ops.hpp"
#include "mathrules/terms.hpp"

namespace mathrules {

enum class ExponentRule { def_unfold, zero_power, merge_product, merge_base, merge_quotient };
enum class DivisionRule { split_sum, split_product, nested };

namespace detail {

inline Expr strip_group(Expr e) {
  while (e.is_group()) e = e.child();
  return e;
}

struct PowParts {
  Expr base;
  long long exp = 0;
};

inline std::optional<PowParts> as_int_pow(const Expr& raw) {
  Expr e = strip_group(raw);
  if (!e.is_bin(BinOp::pow)) return std::nullopt;
  bool ok = false;
  long long n = small_int_exponent(e.rhs(), ok);
  if (!ok) return std::nullopt;
  return PowParts{e.lhs(), n};
}

}  // namespace detail

/// Applies one exponentiation property; PatternMismatch when the input does
/// not have the rule's shape.
inline Expr exponent_apply(const Expr& e, ExponentRule rule) {
  using detail::as_int_pow;
  using detail::strip_group;
  Expr x = strip_group(e);
  switch (rule) {
    case ExponentRule::zero_power: {
      auto p = as_int_pow(x);
      if (!p || p->exp != 0) raise(errc::pattern_mismatch, "expected w^0");
      return Expr::integer(1);
    }
    case ExponentRule::def_unfold: {
      auto p = as_int_pow(x);
      if (!p || p->exp == 0 || p->exp > 12 || p->exp < -12)
        raise(errc::pattern_mismatch, "expected w^n with small nonzero integer n");
      long long n = p->exp > 0 ? p->exp : -p->exp;
      Expr chain = p->base;
      for (long long i = 1; i < n; ++i) chain = Expr::bin(BinOp::mul, chain, p->base);
      if (p->exp > 0) return chain;
      return Expr::bin(BinOp::div, Expr::integer(1), chain);
    }
    case ExponentRule::merge_product: {
      if (!x.is_bin(BinOp::mul)) raise(errc::pattern_mismatch, "expected w^n*w^m");
      auto l = as_int_pow(x.lhs()), r = as_int_pow(x.rhs());
      if (!l || !r || !(l->base == r->base))
        raise(errc::pattern_mismatch, "expected equal bases in w^n*w^m");
      return Expr::bin(BinOp::pow, l->base, Expr::integer(l->exp + r->exp));
    }
    case ExponentRule::merge_base: {
      if (!x.is_bin(BinOp::mul)) raise(errc::pattern_mismatch, "expected w1^n*w2^n");
      auto l = as_int_pow(x.lhs()), r = as_int_pow(x.rhs());
      if (!l || !r || l->exp != r->exp)
        raise(errc::pattern_mismatch, "expected equal exponents in w1^n*w2^n");
      return Expr::bin(BinOp::pow, Expr::bin(BinOp::mul, l->base, r->base),
                       Expr::integer(l->exp));
    }
    case ExponentRule::merge_quotient: {
      if (!x.is_bin(BinOp::div)) raise(errc::pattern_mismatch, "expected w^n/w^m");
      auto l = as_int_pow(x.lhs()), r = as_int_pow(x.rhs());
      if (!l || !r || !(l->base == r->base))
        raise(errc::pattern_mismatch, "expected equal bases in w^n/w^m");
      return Expr::bin(BinOp::pow, l->base, Expr::integer(l->exp - r->exp));
    }
  }
  raise(errc::pattern_mismatch, "unknown exponent rule");
}

/// Applies one division property; PatternMismatch when the shape is wrong.
inline Expr division_rewrite(const Expr& e, DivisionRule rule) {
  using detail::strip_group;
  Expr x = strip_group(e);
  if (!x.is_bin(BinOp::div)) raise(errc::pattern_mismatch, "expected a quotient");
  Expr num = strip_group(x.lhs()), den = strip_group(x.rhs());
  switch (rule) {
    case DivisionRule::split_sum: {
      if (!num.is_bin(BinOp::add) && !num.is_bin(BinOp::sub))
        raise(errc::pattern_mismatch, "expected (w1+-w2)/w3");
      Expr a = num.lhs(), b = num.rhs();
      return Expr::bin(num.op(), Expr::bin(BinOp::div, a, den), Expr::bin(BinOp::div, b, den));
    }
    case DivisionRule::split_product: {
      if (!num.is_bin(BinOp::mul) || !den.is_bin(BinOp::mul))
        raise(errc::pattern_mismatch, "expected (w1*w2)/(w3*w4)");
      // (w1)/(w3)*(w2)/(w4): every operand parenthesized, left-leaning, as
      // in the source rule's rendering.
      Expr g1 = Expr::group(num.lhs()), g2 = Expr::group(num.rhs());
      Expr g3 = Expr::group(den.lhs()), g4 = Expr::group(den.rhs());
      return Expr::bin(BinOp::div,
                       Expr::bin(BinOp::mul, Expr::bin(BinOp::div, g1, g3), g2), g4);
    }
    case DivisionRule::nested: {
      if (!num.is_bin(BinOp::div)) raise(errc::pattern_mismatch, "expected (w1/w2)/w3");
      return Expr::bin(BinOp::div, num.lhs(),
                       Expr::bin(BinOp::mul, num.rhs(), den));
    }
  }
  raise(errc::pattern_mismatch, "unknown division rule");
}

/// Swaps the first occurrences of t1 and t2 among the top-level terms of op.
/// Signs travel with their terms. TermAbsent when a required occurrence is
/// missing (including a second occurrence when t1 == t2).
inline Expr commute(const Expr& e, BinOp op, const Expr& t1, const Expr& t2) {
  if (op == BinOp::add) {
    std::vector<SignedTerm> terms = additive_terms(e);
    std::size_t i = terms.size(), j = terms.size();
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (i == terms.size() && terms[k].term == t1) {
        i = k;
        continue;
      }
      if (j == terms.size() && terms[k].term == t2) j = k;
    }
    if (i == terms.size() || j == terms.size())
      raise(errc::term_absent, "term to swap not found");
    std::swap(terms[i], terms[j]);
    return rebuild_sum(terms);
  }
  if (op == BinOp::mul) {
    std::vector<Expr> factors = multiplicative_terms(e);
    std::size_t i = factors.size(), j = factors.size();
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (i == factors.size() && factors[k] == t1) {
        i = k;
        continue;
      }
      if (j == factors.size() && factors[k] == t2) j = k;
    }
    if (i == factors.size() || j == factors.size())
      raise(errc::term_absent, "factor to swap not found");
    std::swap(factors[i], factors[j]);
    return rebuild_product(factors);
  }
  raise(errc::pattern_mismatch, "commutativity applies to + and * chains");
}

}  // namespace mathrules
