#pragma once

#include <vector>

#include "mathrules/algebra/monomial.hpp"
#include "mathrules/terms.hpp"

namespace mathrules {

namespace detail {

struct TermList {
  std::vector<Monomial> terms;
};

inline TermList expand_terms(const Expr& e, bool full);

inline TermList product_of(const TermList& l, const TermList& r) {
  TermList out;
  out.terms.reserve(l.terms.size() * r.terms.size());
  // Left-factor-major: for each left term, sweep the right bracket.
  for (const auto& a : l.terms) {
    for (const auto& b : r.terms) {
      Monomial m = a;
      m.coef *= b.coef;
      for (const auto& f : b.factors) m.push(f.key, f.base, f.exp);
      m.drop_zero_exponents();
      out.terms.push_back(std::move(m));
    }
  }
  return out;
}

inline TermList pow_of(const TermList& base, long long n) {
  TermList acc = base;
  for (long long i = 1; i < n; ++i) acc = product_of(acc, base);
  return acc;
}

inline Expr terms_to_expr(const TermList& tl) { return monomials_to_expr(tl.terms); }

inline Monomial opaque_term(const Expr& e) {
  Monomial m;
  m.push(render(e), e, 1);
  return m;
}

inline TermList expand_terms(const Expr& e, bool full) {
  switch (e.tag()) {
    case Expr::Tag::atom: {
      TermList out;
      out.terms.push_back(monomialize(e));
      return out;
    }
    case Expr::Tag::group:
      return expand_terms(e.child(), full);
    case Expr::Tag::neg: {
      TermList out = expand_terms(e.child(), full);
      for (auto& m : out.terms) m.coef = -m.coef;
      return out;
    }
    case Expr::Tag::bin:
      switch (e.op()) {
        case BinOp::add: {
          TermList l = expand_terms(e.lhs(), full), r = expand_terms(e.rhs(), full);
          l.terms.insert(l.terms.end(), r.terms.begin(), r.terms.end());
          return l;
        }
        case BinOp::sub: {
          TermList l = expand_terms(e.lhs(), full), r = expand_terms(e.rhs(), full);
          for (auto& m : r.terms) m.coef = -m.coef;
          l.terms.insert(l.terms.end(), r.terms.begin(), r.terms.end());
          return l;
        }
        case BinOp::mul:
          return product_of(expand_terms(e.lhs(), full), expand_terms(e.rhs(), full));
        case BinOp::div: {
          TermList num = expand_terms(e.lhs(), full);
          if (!full) {
            // This expansion never splits quotients; keep the node whole.
            TermList out;
            out.terms.push_back(opaque_term(Expr::bin(BinOp::div, terms_to_expr(num), e.rhs())));
            return out;
          }
          // Canonical mode: fold the denominator into negative exponents.
          TermList den = expand_terms(e.rhs(), full);
          Monomial dm;
          if (den.terms.size() == 1) {
            dm = den.terms[0];
          } else {
            Expr den_expr = terms_to_expr(den);
            dm.push(render(den_expr), den_expr, 1);
          }
          TermList out;
          for (auto& m : num.terms) {
            if (dm.coef.is_zero()) {
              out.terms.clear();
              out.terms.push_back(opaque_term(e));
              return out;
            }
            m.coef /= dm.coef;
            for (const auto& f : dm.factors) m.push(f.key, f.base, -f.exp);
            m.drop_zero_exponents();
            out.terms.push_back(std::move(m));
          }
          return out;
        }
        case BinOp::pow: {
          bool ok = false;
          long long n = small_int_exponent(e.rhs(), ok);
          TermList base = expand_terms(e.lhs(), full);
          if (ok && n >= 2 && n <= 8 && base.terms.size() >= 2) {
            if (!full && n == 2 && base.terms.size() == 2) {
              // Remarkable identity shape: (a (+|-) b)^2 = a^2 + b^2 (+|-) 2ab.
              const Monomial &a = base.terms[0], &b = base.terms[1];
              Monomial cross = a;
              cross.coef *= b.coef * Rational(2);
              for (const auto& f : b.factors) cross.push(f.key, f.base, f.exp);
              TermList out;
              Monomial a2 = a, b2 = b;
              a2.coef *= a.coef;
              b2.coef *= b.coef;
              for (auto& f : a2.factors) f.exp *= 2;
              for (auto& f : b2.factors) f.exp *= 2;
              out.terms.push_back(a2);
              out.terms.push_back(b2);
              out.terms.push_back(cross);
              for (auto& m : out.terms) m.drop_zero_exponents();
              return out;
            }
            return pow_of(base, n);
          }
          if (ok && n == 1) return base;
          if (ok && n == 0) {
            TermList out;
            Monomial one;
            out.terms.push_back(one);
            return out;
          }
          if (ok && base.terms.size() == 1) {
            // Single-term base: push the exponent through the monomial.
            Monomial m = base.terms[0];
            if (n >= -16 && n <= 16 && !(m.coef.is_zero() && n < 0)) {
              Monomial r;
              r.coef = m.coef.pow(n);
              for (const auto& f : m.factors) r.push(f.key, f.base, f.exp * n);
              r.drop_zero_exponents();
              TermList out;
              out.terms.push_back(std::move(r));
              return out;
            }
          }
          TermList out;
          out.terms.push_back(opaque_term(Expr::bin(BinOp::pow, terms_to_expr(base), e.rhs())));
          return out;
        }
      }
  }
  TermList out;
  out.terms.push_back(opaque_term(e));
  return out;
}

}  // namespace detail

/// Distributes products over sums and unfolds small integer powers of sums,
/// with the remarkable-identity shape for squared binomials. Term order is
/// left-factor-major. Quotients are not split.
inline Expr expand(const Expr& e) {
  return detail::terms_to_expr(detail::expand_terms(e, /*full=*/false));
}

namespace detail {

/// Fully-expanded monomials for canonical comparison (quotients folded into
/// negative exponents, like terms merged).
inline std::vector<Monomial> canonical_monomials(const Expr& e) {
  TermList tl = expand_terms(e, /*full=*/true);
  return merge_monomials(tl.terms);
}

}  // namespace detail

/// Order-independent canonical identity: equal keys imply equal values.
inline std::string canonical_key(const Expr& e) {
  auto ms = detail::canonical_monomials(e);
  std::vector<std::string> parts;
  parts.reserve(ms.size());
  for (const auto& m : ms) parts.push_back(m.coef.to_string() + "|" + m.signature());
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) {
    key += p;
    key += '\x1e';
  }
  return key;
}

}  // namespace mathrules
