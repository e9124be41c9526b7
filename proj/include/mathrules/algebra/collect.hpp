#pragma once

#include <algorithm>

#include "mathrules/algebra/monomial.hpp"

namespace mathrules {

/// Merges like monomials with summed coefficients and drops zero terms.
/// Ordering: descending degree, then first occurrence.
inline Expr collect_simplify(const Expr& e) {
  std::vector<Monomial> ms = merge_monomials(monomials_of(e));
  std::stable_sort(ms.begin(), ms.end(),
                   [](const Monomial& a, const Monomial& b) { return a.degree() > b.degree(); });
  return monomials_to_expr(ms);
}

namespace detail {

// Positive-coefficient terms first (stable within each class). This is the
// ordering used inside factored groups.
inline void order_positive_first(std::vector<Monomial>& ms) {
  std::stable_sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
    return !a.coef.is_negative() && b.coef.is_negative();
  });
}

inline BigInt int_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a < 0 ? BigInt(-a) : a, b < 0 ? BigInt(-b) : b);
}

// Greatest common integer divisor of the coefficients; 1 when any
// coefficient is non-integral.
inline Rational coef_gcd(const std::vector<Monomial>& ms) {
  BigInt g = 0;
  for (const auto& m : ms) {
    if (!m.coef.is_integer()) return Rational(1);
    g = int_gcd(g, m.coef.numerator());
  }
  return g == 0 ? Rational(1) : Rational(g);
}

}  // namespace detail

/// Groups maximal subsets of terms sharing a common non-numeric factor and
/// pulls the full common factor (including the coefficients' integer gcd)
/// out of each group. The result is equivalent to the input.
inline Expr factor_common(const Expr& e) {
  std::vector<Monomial> ms = merge_monomials(monomials_of(e));
  if (ms.empty()) return Expr::integer(0);

  struct Item {
    bool is_group = false;
    Monomial mono;          // leaf term
    Expr group_expr;        // factored group
  };
  std::vector<Item> items;
  std::vector<Monomial> remaining = ms;
  std::vector<std::size_t> remaining_slot(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) remaining_slot[i] = i;
  std::vector<std::pair<std::size_t, Item>> placed;

  for (;;) {
    // Candidate keys in first-occurrence order.
    std::vector<std::string> order;
    std::map<std::string, std::size_t> count;
    for (const auto& m : remaining) {
      for (const auto& f : m.factors) {
        if (f.exp < 1) continue;
        if (!count.count(f.key)) order.push_back(f.key);
        count[f.key]++;
      }
    }
    std::string best;
    std::size_t best_count = 1;
    for (const auto& k : order) {
      if (count[k] > best_count) {
        best = k;
        best_count = count[k];
      }
    }
    if (best.empty()) break;

    std::vector<Monomial> group;
    std::vector<Monomial> rest;
    std::vector<std::size_t> rest_slot;
    std::size_t group_slot = SIZE_MAX;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      bool has = false;
      for (const auto& f : remaining[i].factors)
        if (f.key == best && f.exp >= 1) has = true;
      if (has) {
        group.push_back(remaining[i]);
        group_slot = std::min(group_slot, remaining_slot[i]);
      } else {
        rest.push_back(remaining[i]);
        rest_slot.push_back(remaining_slot[i]);
      }
    }

    // Full common factor of the group: every key with min exponent >= 1,
    // in first-occurrence order, plus the integer gcd of coefficients.
    std::vector<Factor> common;
    for (const auto& f : group[0].factors) {
      if (f.exp < 1) continue;
      long long min_exp = f.exp;
      bool everywhere = true;
      for (const auto& g : group) {
        long long ge = 0;
        for (const auto& gf : g.factors)
          if (gf.key == f.key) ge = gf.exp;
        if (ge < 1) everywhere = false;
        min_exp = std::min(min_exp, ge);
      }
      if (everywhere && min_exp >= 1) common.push_back({f.key, f.base, min_exp});
    }
    Rational g = detail::coef_gcd(group);

    std::vector<Monomial> inner = group;
    for (auto& m : inner) {
      m.coef /= g;
      for (const auto& c : common) {
        for (auto& f : m.factors)
          if (f.key == c.key) f.exp -= c.exp;
      }
      m.drop_zero_exponents();
    }
    detail::order_positive_first(inner);

    Monomial factor_mono;
    factor_mono.coef = g;
    for (const auto& c : common) factor_mono.factors.push_back(c);
    Expr group_expr = Expr::bin(BinOp::mul, monomial_expr(factor_mono, true),
                                monomials_to_expr(inner));

    Item it;
    it.is_group = true;
    it.group_expr = group_expr;
    placed.emplace_back(group_slot, std::move(it));

    remaining = std::move(rest);
    remaining_slot = std::move(rest_slot);
    if (remaining.empty()) break;
  }

  if (placed.empty()) {
    // No shared name: still pull a global integer gcd when there is one.
    Rational g = detail::coef_gcd(remaining);
    if (remaining.size() >= 2 && g > Rational(1)) {
      std::vector<Monomial> inner = remaining;
      for (auto& m : inner) m.coef /= g;
      detail::order_positive_first(inner);
      return Expr::bin(BinOp::mul, Expr::integer(g), monomials_to_expr(inner));
    }
    return monomials_to_expr(remaining);
  }

  for (std::size_t i = 0; i < remaining.size(); ++i) {
    Item it;
    it.mono = remaining[i];
    placed.emplace_back(remaining_slot[i], std::move(it));
  }
  std::sort(placed.begin(), placed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Expr acc;
  bool first = true;
  for (const auto& [slot, item] : placed) {
    (void)slot;
    if (item.is_group) {
      acc = first ? item.group_expr : Expr::bin(BinOp::add, acc, item.group_expr);
    } else {
      bool neg = item.mono.coef.is_negative();
      if (first)
        acc = monomial_expr(item.mono, true);
      else
        acc = Expr::bin(neg ? BinOp::sub : BinOp::add, acc, monomial_expr(item.mono, false));
    }
    first = false;
  }
  return acc;
}

}  // namespace mathrules
