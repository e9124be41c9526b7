#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "mathrules/render.hpp"
#include "mathrules/terms.hpp"

namespace mathrules {

/// One multiplicative factor of a monomial: a name or an opaque non-monomial
/// subtree (e.g. a parenthesized sum kept whole), with an integer exponent.
struct Factor {
  std::string key;  // canonical identity used for merging
  Expr base;
  long long exp = 1;
};

/// coefficient * prod(factors). Factor display order follows first
/// occurrence in the source term.
struct Monomial {
  Rational coef = Rational(1);
  std::vector<Factor> factors;

  bool is_constant() const { return factors.empty(); }

  long long degree() const {
    long long d = 0;
    for (const auto& f : factors) d += f.exp > 0 ? f.exp : -f.exp;
    return d;
  }

  void push(const std::string& key, const Expr& base, long long exp) {
    for (auto& f : factors) {
      if (f.key == key) {
        f.exp += exp;
        return;
      }
    }
    factors.push_back({key, base, exp});
  }

  void drop_zero_exponents() {
    std::erase_if(factors, [](const Factor& f) { return f.exp == 0; });
  }

  /// Merging identity: factor keys + exponents, independent of order.
  std::string signature() const {
    std::vector<std::string> parts;
    parts.reserve(factors.size());
    for (const auto& f : factors) parts.push_back(f.key + "^" + std::to_string(f.exp));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) {
      s += p;
      s += '\x1f';
    }
    return s;
  }
};

namespace detail {

inline void monomialize_into(const Expr& e, Monomial& m, bool invert);

inline long long small_int_exponent(const Expr& e, bool& ok) {
  ok = false;
  Expr x = e;
  while (x.is_group()) x = x.child();
  bool neg = false;
  if (x.is_neg()) {
    neg = true;
    x = x.child();
    while (x.is_group()) x = x.child();
  }
  if (!x.is_numeric() || !x.value().is_integer()) return 0;
  const BigInt& n = x.value().numerator();
  if (n > 64 || n < -64) return 0;
  ok = true;
  long long v = static_cast<long long>(n);
  return neg ? -v : v;
}

inline void monomial_opaque(const Expr& e, Monomial& m, bool invert) {
  m.push(render(e), e, invert ? -1 : 1);
}

inline void monomialize_into(const Expr& e, Monomial& m, bool invert) {
  switch (e.tag()) {
    case Expr::Tag::atom:
      if (e.is_numeric()) {
        if (invert) {
          if (e.value().is_zero()) {
            monomial_opaque(e, m, invert);  // keep 1/0 opaque rather than throw
            return;
          }
          m.coef /= e.value();
        } else {
          m.coef *= e.value();
        }
      } else {
        m.push(e.name_token(), e, invert ? -1 : 1);
      }
      return;
    case Expr::Tag::neg:
      m.coef = -m.coef;
      monomialize_into(e.child(), m, invert);
      return;
    case Expr::Tag::group:
      monomialize_into(e.child(), m, invert);
      return;
    case Expr::Tag::bin:
      switch (e.op()) {
        case BinOp::mul:
          monomialize_into(e.lhs(), m, invert);
          monomialize_into(e.rhs(), m, invert);
          return;
        case BinOp::div:
          monomialize_into(e.lhs(), m, invert);
          monomialize_into(e.rhs(), m, !invert);
          return;
        case BinOp::pow: {
          bool ok = false;
          long long n = small_int_exponent(e.rhs(), ok);
          Expr base = e.lhs();
          while (base.is_group()) base = base.child();
          if (ok && base.is_name()) {
            m.push(base.name_token(), base, invert ? -n : n);
            return;
          }
          if (ok && base.is_numeric() && n >= -16 && n <= 16 && !(base.value().is_zero() && n < 0)) {
            Rational v = base.value().pow(n);
            if (invert && v.is_zero()) {
              monomial_opaque(e, m, invert);
              return;
            }
            m.coef = invert ? m.coef / v : m.coef * v;
            return;
          }
          monomial_opaque(e, m, invert);
          return;
        }
        case BinOp::add:
        case BinOp::sub:
          monomial_opaque(e, m, invert);
          return;
      }
  }
}

}  // namespace detail

inline Monomial monomialize(const Expr& term, bool negative = false) {
  Monomial m;
  if (negative) m.coef = -m.coef;
  detail::monomialize_into(term, m, false);
  m.drop_zero_exponents();
  return m;
}

/// Top-level additive terms as monomials, source order.
inline std::vector<Monomial> monomials_of(const Expr& e) {
  std::vector<Monomial> out;
  for (const auto& t : additive_terms(e)) out.push_back(monomialize(t.term, t.negative));
  return out;
}

/// Merges like monomials (summed coefficients, zero terms dropped), keeping
/// the first occurrence's slot and factor display order.
inline std::vector<Monomial> merge_monomials(const std::vector<Monomial>& in) {
  std::vector<Monomial> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& m : in) {
    std::string sig = m.signature();
    auto it = slot.find(sig);
    if (it == slot.end()) {
      slot.emplace(sig, out.size());
      out.push_back(m);
    } else {
      out[it->second].coef += m.coef;
    }
  }
  std::erase_if(out, [](const Monomial& m) { return m.coef.is_zero(); });
  return out;
}

/// Exact numeric value as an atom when representable, else a p/q quotient.
inline Expr numeric_expr(const Rational& v) {
  if (v.is_integer()) return Expr::integer(v);
  if (v.is_two_place_decimal()) return Expr::decimal(v);
  return Expr::bin(BinOp::div, Expr::integer(Rational(v.numerator())),
                   Expr::integer(Rational(v.denominator())));
}

/// Expr for a monomial. With with_sign=false the coefficient's absolute
/// value is used (the sign goes into the surrounding +/- chain); with
/// with_sign=true a negative coefficient is embedded in the leading numeric
/// atom ("-9*x^2") or as a leading negation for unit coefficients ("-x").
/// Negative exponents render as a trailing division.
inline Expr monomial_expr(const Monomial& m, bool with_sign) {
  Rational c = with_sign ? m.coef : m.coef.abs();
  std::vector<Expr> num, den;
  for (const auto& f : m.factors) {
    auto& side = f.exp > 0 ? num : den;
    long long a = f.exp > 0 ? f.exp : -f.exp;
    side.push_back(a == 1 ? f.base : Expr::bin(BinOp::pow, f.base, Expr::integer(a)));
  }
  Expr numerator;
  if (num.empty()) {
    numerator = numeric_expr(c);
  } else if (c == Rational(1)) {
    numerator = rebuild_product(num);
  } else if (c == Rational(-1)) {
    numerator = Expr::neg(rebuild_product(num));
  } else {
    std::vector<Expr> chain;
    chain.push_back(numeric_expr(c));
    chain.insert(chain.end(), num.begin(), num.end());
    numerator = rebuild_product(chain);
  }
  if (den.empty()) return numerator;
  return Expr::bin(BinOp::div, numerator, rebuild_product(den));
}

/// Rebuilds a +/- chain from monomials.
inline Expr monomials_to_expr(const std::vector<Monomial>& ms) {
  if (ms.empty()) return Expr::integer(0);
  Expr acc = monomial_expr(ms[0], /*with_sign=*/true);
  for (std::size_t i = 1; i < ms.size(); ++i)
    acc = Expr::bin(ms[i].coef.is_negative() ? BinOp::sub : BinOp::add, acc,
                    monomial_expr(ms[i], /*with_sign=*/false));
  return acc;
}

}  // namespace mathrules
