#pragma once

#include <optional>

#include "mathrules/algebra/equation_ops.hpp"

namespace mathrules {

namespace detail {

// Structural isolation: invert operations layer by layer while the target
// occurs exactly once. Reproduces the inverse-operation answer shapes
// (u/v-w, 1/(v/u-1/w)) instead of the move-everything-left form.
inline std::optional<Expr> peel_solve(const Equation& eq, const std::string& target) {
  Expr side = eq.lhs, rest = eq.rhs;
  if (!side.contains_name(target)) std::swap(side, rest);
  SimplifyPolicy pol;  // defaults: numeric folds + unit/zero cleanup
  for (;;) {
    if (side.is_name() && side.name_token() == target) return rest;
    switch (side.tag()) {
      case Expr::Tag::group:
        side = side.child();
        continue;
      case Expr::Tag::neg:
        rest = negate(rest, pol);
        side = side.child();
        continue;
      case Expr::Tag::bin: {
        Expr l = side.lhs(), r = side.rhs();
        bool in_l = l.contains_name(target);
        switch (side.op()) {
          case BinOp::add:
            rest = combine(BinOp::sub, rest, in_l ? r : l, pol);
            side = in_l ? l : r;
            continue;
          case BinOp::sub:
            if (in_l) {
              rest = combine(BinOp::add, rest, r, pol);
              side = l;
            } else {
              rest = combine(BinOp::sub, l, rest, pol);
              side = r;
            }
            continue;
          case BinOp::mul:
            rest = combine(BinOp::div, rest, in_l ? r : l, pol);
            side = in_l ? l : r;
            continue;
          case BinOp::div:
            if (in_l) {
              rest = combine(BinOp::mul, rest, r, pol);
              side = l;
            } else {
              rest = combine(BinOp::div, l, rest, pol);
              side = r;
            }
            continue;
          case BinOp::pow:
            return std::nullopt;
        }
        continue;
      }
      default:
        return std::nullopt;
    }
  }
}

struct LinearSplit {
  std::vector<Monomial> target_cofactors;  // coefficient-of-target terms
  std::vector<Monomial> constants;         // target-free terms
};

inline LinearSplit split_linear(const Expr& side, const std::string& target) {
  LinearSplit out;
  for (const auto& m : merge_monomials(monomials_of(side))) {
    long long exp = 0;
    for (const auto& f : m.factors) {
      if (f.key == target) {
        exp = f.exp;
      } else if (f.base.contains_name(target)) {
        raise(errc::not_linear_in_target, "target '" + target + "' inside factor " + f.key);
      }
    }
    if (exp == 0) {
      out.constants.push_back(m);
    } else if (exp == 1) {
      Monomial c = m;
      std::erase_if(c.factors, [&](const Factor& f) { return f.key == target; });
      out.target_cofactors.push_back(std::move(c));
    } else {
      raise(errc::not_linear_in_target,
            "target '" + target + "' has degree " + std::to_string(exp));
    }
  }
  return out;
}

// Accumulates (sign * m) terms into `acc` keyed by monomial signature,
// preserving first-appearance slot order.
inline void accumulate(std::vector<Monomial>& acc, const std::vector<Monomial>& ms, bool negate) {
  for (auto m : ms) {
    if (negate) m.coef = -m.coef;
    acc.push_back(std::move(m));
  }
}

}  // namespace detail

/// Solves a first-order equation for `target`. Tries structural inversion
/// first (single occurrence); otherwise collects per-monomial coefficients:
/// target = sum(basis*(b-a)) / sum(cofactor*(a-b)), numerator factored.
inline Expr solve_linear(const Equation& eq, const std::string& target) {
  std::size_t occurrences = eq.lhs.count_name(target) + eq.rhs.count_name(target);
  if (occurrences == 0) raise(errc::target_absent, "'" + target + "' absent from equation");
  if (occurrences == 1) {
    if (auto r = detail::peel_solve(eq, target)) return *r;
  }

  detail::LinearSplit l = detail::split_linear(eq.lhs, target);
  detail::LinearSplit r = detail::split_linear(eq.rhs, target);

  // Denominator: a_k - b_k over the target's cofactor basis, lhs first.
  std::vector<Monomial> denom;
  detail::accumulate(denom, l.target_cofactors, false);
  detail::accumulate(denom, r.target_cofactors, true);
  denom = merge_monomials(denom);
  if (denom.empty())
    raise(errc::identically_zero_coefficient, "coefficient of '" + target + "' vanishes");

  // Numerator: b_i - a_i over the target-free basis, lhs first.
  std::vector<Monomial> numer;
  detail::accumulate(numer, l.constants, true);
  detail::accumulate(numer, r.constants, false);
  numer = merge_monomials(numer);
  if (numer.empty()) return Expr::integer(0);

  Expr numerator = factor_common(monomials_to_expr(numer));
  Expr denominator = monomials_to_expr(denom);
  return combine(BinOp::div, numerator, denominator, SimplifyPolicy{});
}

/// Exact quadratic solution descriptor.
struct QuadraticSolution {
  Rational delta;                 // b^2 - 4ac
  int real_root_count = 0;        // 2, 1, or 0 (conjugate pair)
  std::optional<Rational> root1;  // set when exact rationals exist
  std::optional<Rational> root2;
  Rational real_part;             // conjugate pair: -b/(2a)
  std::optional<Rational> imag_part;  // exact when -delta/(4a^2) is a perfect square
  Rational imag_part_squared;
};

inline QuadraticSolution solve_quadratic(const Rational& a, const Rational& b,
                                         const Rational& c) {
  if (a.is_zero()) raise(errc::leading_zero, "quadratic with a = 0");
  QuadraticSolution out;
  out.delta = b * b - Rational(4) * a * c;
  Rational two_a = Rational(2) * a;
  if (out.delta.is_zero()) {
    out.real_root_count = 1;
    out.root1 = -b / two_a;
    return out;
  }
  if (out.delta.is_positive()) {
    out.real_root_count = 2;
    Rational s;
    if (out.delta.sqrt_exact(s)) {
      out.root1 = (-b + s) / two_a;
      out.root2 = (-b - s) / two_a;
    }
    return out;
  }
  out.real_root_count = 0;
  out.real_part = -b / two_a;
  out.imag_part_squared = -out.delta / (two_a * two_a);
  Rational im;
  if (out.imag_part_squared.sqrt_exact(im)) out.imag_part = im;
  return out;
}

}  // namespace mathrules
