#pragma once

#include <functional>
#include <map>
#include <optional>

#include "mathrules/algebra/equation_ops.hpp"
#include "mathrules/parse.hpp"
#include "mathrules/render.hpp"

namespace mathrules {

/// One row of a linear system in structured form: an optional coefficient
/// expression per declared variable (absent = zero) plus the right-hand
/// side value. Coefficients are kept as unevaluated trees; quotients formed
/// during elimination stay as parenthesized units like (cat/9).
struct GaussRow {
  std::vector<std::optional<Expr>> coef;
  Expr rhs;
};

enum class GaussAction { normalize, eliminate, back_substitute, done };

struct GaussStep {
  GaussAction action = GaussAction::done;
  std::size_t pivot = 0;
};

struct GaussState {
  std::vector<std::string> variables;
  std::vector<GaussRow> rows;

  std::size_t var_index(const std::string& n) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == n) return i;
    return variables.size();
  }
};

inline bool contains_any_name(const Expr& e, const std::vector<std::string>& names) {
  for (const auto& n : names)
    if (e.contains_name(n)) return true;
  return false;
}

namespace detail {

inline bool is_one_coef(const std::optional<Expr>& c) {
  return c && c->is_numeric() && c->value() == Rational(1);
}

inline Expr negated(const Expr& positive_magnitude) {
  return positive_magnitude.is_numeric() ? negate(positive_magnitude)
                                         : Expr::neg(positive_magnitude);
}

// Sign-canonical quotient of two coefficient values. Atom/atom quotients
// become a single parenthesized unit "(cat/9)"; compound operands are
// parenthesized individually. Equal magnitudes collapse to 1.
inline Expr qdiv(const Expr& c, const Expr& p) {
  SignSplit sc = strip_sign(c), sp = strip_sign(p);
  bool neg = sc.negative ^ sp.negative;
  Expr mag;
  if (sc.magnitude == sp.magnitude) {
    mag = Expr::integer(1);
  } else if (is_one(sp.magnitude)) {
    mag = sc.magnitude;
  } else if (sc.magnitude.is_atom() && sp.magnitude.is_atom()) {
    mag = Expr::group(Expr::bin(BinOp::div, sc.magnitude, sp.magnitude));
  } else {
    auto wrap = [](const Expr& x) { return x.is_atom() || x.is_group() ? x : Expr::group(x); };
    mag = Expr::bin(BinOp::div, wrap(sc.magnitude), wrap(sp.magnitude));
  }
  return neg ? negated(mag) : mag;
}

// pivot_value * multiplier with signs pulled out; the magnitude product is
// optionally kept as a parenthesized unit (the convention for right-hand
// side values).
inline Expr signed_product(const Expr& pivot_value, const Expr& multiplier, bool grouped) {
  SignSplit p = strip_sign(pivot_value), m = strip_sign(multiplier);
  Expr mag;
  if (is_one(m.magnitude))
    mag = p.magnitude;
  else if (is_one(p.magnitude))
    mag = m.magnitude;
  else if (p.magnitude.is_numeric() && m.magnitude.is_numeric())
    mag = numeric_expr(p.magnitude.value() * m.magnitude.value());
  else
    mag = grouped ? Expr::group(Expr::bin(BinOp::mul, p.magnitude, m.magnitude))
                  : Expr::bin(BinOp::mul, p.magnitude, m.magnitude);
  return (p.negative ^ m.negative) ? negated(mag) : mag;
}

// a - b with operand signs canonicalized into the chain and exact numeric
// folding. Compound results parenthesize themselves (Neg or Group) so they
// can stand in front of a variable.
inline Expr signed_sub(const Expr& a_signed, const Expr& b_signed) {
  SignSplit a = strip_sign(a_signed), b = strip_sign(b_signed);
  if (a.magnitude.is_numeric() && b.magnitude.is_numeric()) {
    Rational va = a.negative ? -a.magnitude.value() : a.magnitude.value();
    Rational vb = b.negative ? -b.magnitude.value() : b.magnitude.value();
    return numeric_expr(va - vb);
  }
  if (!a.negative && !b.negative)
    return Expr::group(Expr::bin(BinOp::sub, a.magnitude, b.magnitude));
  if (!a.negative && b.negative)
    return Expr::group(Expr::bin(BinOp::add, a.magnitude, b.magnitude));
  if (a.negative && !b.negative) return Expr::neg(Expr::bin(BinOp::add, a.magnitude, b.magnitude));
  return Expr::neg(Expr::bin(BinOp::sub, a.magnitude, b.magnitude));
}

}  // namespace detail

/// Row as an equation, for rendering and grading.
inline Equation row_equation(const GaussState& s, const GaussRow& row) {
  Expr lhs;
  bool first = true;
  for (std::size_t j = 0; j < s.variables.size(); ++j) {
    if (!row.coef[j]) continue;
    Expr var = Expr::name(s.variables[j]);
    detail::SignSplit c = detail::strip_sign(*row.coef[j]);
    Expr mag = detail::is_one(c.magnitude) ? var : Expr::bin(BinOp::mul, c.magnitude, var);
    if (first) {
      if (!c.negative) {
        lhs = mag;
      } else if (detail::is_one(c.magnitude)) {
        lhs = Expr::neg(var);
      } else if (c.magnitude.is_numeric()) {
        lhs = Expr::bin(BinOp::mul, numeric_expr(-c.magnitude.value()), var);
      } else {
        lhs = Expr::bin(BinOp::mul, Expr::neg(c.magnitude), var);
      }
      first = false;
    } else {
      lhs = Expr::bin(c.negative ? BinOp::sub : BinOp::add, lhs, mag);
    }
  }
  if (first) lhs = Expr::integer(0);
  return Equation{lhs, row.rhs};
}

inline EquationSystem to_system(const GaussState& s) {
  EquationSystem sys;
  sys.variables = s.variables;
  for (const auto& r : s.rows) sys.rows.push_back(row_equation(s, r));
  return sys;
}

inline std::string render(const GaussState& s, const RenderConventions& conv = {}) {
  return render(to_system(s), conv);
}

/// Rebuilds the structured state from a rendered system. Every lhs term
/// must be linear in exactly one declared variable; the rhs may be any
/// variable-free expression (free names allowed on the rhs only after back
/// substitution of an underdetermined system).
inline GaussState parse_gauss_state(const std::string& system_text,
                                    const std::vector<std::string>& variables,
                                    const RenderConventions& conv = {}) {
  std::string_view text = system_text;
  auto open = text.find(conv.system_open);
  auto close = text.rfind(conv.system_close);
  if (open == std::string_view::npos || close == std::string_view::npos || close <= open)
    raise(errc::parse_error, "missing system wrapper ;[; ... ;];");
  text = text.substr(open + conv.system_open.size(), close - open - conv.system_open.size());

  GaussState st;
  st.variables = variables;
  std::vector<std::string> row_texts;
  std::size_t start = 0;
  for (;;) {
    auto sep = text.find(conv.system_row_sep, start);
    if (sep == std::string_view::npos) {
      row_texts.emplace_back(text.substr(start));
      break;
    }
    row_texts.emplace_back(text.substr(start, sep - start));
    start = sep + conv.system_row_sep.size();
  }

  for (const auto& rt : row_texts) {
    Equation eq = parse_equation(rt);
    GaussRow row;
    row.coef.assign(variables.size(), std::nullopt);
    for (const auto& t : additive_terms(eq.lhs)) {
      std::vector<Expr> factors = multiplicative_terms(t.term);
      std::size_t var_slot = variables.size();
      std::vector<Expr> rest;
      for (const auto& f : factors) {
        if (f.is_name() && var_slot == variables.size()) {
          std::size_t vi = st.var_index(f.name_token());
          if (vi < variables.size()) {
            var_slot = vi;
            continue;
          }
        }
        if (contains_any_name(f, variables))
          raise(errc::parse_error, "nonlinear variable use in row: " + rt);
        rest.push_back(f);
      }
      if (var_slot == variables.size())
        raise(errc::parse_error, "left-hand term without a declared variable: " + rt);
      if (row.coef[var_slot]) raise(errc::parse_error, "duplicate variable in row: " + rt);
      Expr c = rest.empty() ? Expr::integer(1) : rebuild_product(rest);
      if (t.negative) c = detail::negated(c);
      row.coef[var_slot] = c;
    }
    row.rhs = eq.rhs;
    st.rows.push_back(std::move(row));
  }
  return st;
}

/// Next elementary transformation, inferred from the state's shape.
inline GaussStep infer_gauss_step(const GaussState& s) {
  const std::size_t k = s.rows.size();
  for (std::size_t p = 0; p < k; ++p) {
    if (!s.rows[p].coef[p])
      raise(errc::singular_pivot, "zero pivot in row " + std::to_string(p));
    if (!detail::is_one_coef(s.rows[p].coef[p])) return {GaussAction::normalize, p};
    for (std::size_t q = p + 1; q < k; ++q)
      if (s.rows[q].coef[p]) return {GaussAction::eliminate, p};
  }
  auto solved = [&](std::size_t i) {
    if (!detail::is_one_coef(s.rows[i].coef[i])) return false;
    for (std::size_t j = 0; j < s.variables.size(); ++j)
      if (j != i && s.rows[i].coef[j]) return false;
    return true;
  };
  for (std::size_t i = k; i-- > 0;)
    if (!solved(i)) return {GaussAction::back_substitute, i};
  return {GaussAction::done, 0};
}

/// Applies exactly one elementary transformation — pivot-row normalization,
/// elimination below one pivot, or one back substitution. nullopt when the
/// system is already simplified.
inline std::optional<GaussState> gauss_step(const GaussState& s) {
  GaussStep step = infer_gauss_step(s);
  if (step.action == GaussAction::done) return std::nullopt;
  GaussState out = s;
  const std::size_t n = s.variables.size();

  switch (step.action) {
    case GaussAction::normalize: {
      GaussRow& row = out.rows[step.pivot];
      Expr pivot = *row.coef[step.pivot];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == step.pivot || !row.coef[j]) continue;
        row.coef[j] = detail::qdiv(*row.coef[j], pivot);
      }
      row.rhs = detail::qdiv(row.rhs, pivot);
      row.coef[step.pivot] = Expr::integer(1);
      return out;
    }
    case GaussAction::eliminate: {
      const GaussRow& prow = s.rows[step.pivot];
      for (std::size_t q = step.pivot + 1; q < s.rows.size(); ++q) {
        GaussRow& row = out.rows[q];
        if (!row.coef[step.pivot]) continue;
        Expr a = *row.coef[step.pivot];
        for (std::size_t j = 0; j < n; ++j) {
          if (j == step.pivot || !prow.coef[j]) continue;
          Expr prod = detail::signed_product(*prow.coef[j], a, /*grouped=*/false);
          if (prod.is_numeric() && prod.value().is_zero()) continue;
          if (!row.coef[j]) {
            // 0 - prod
            detail::SignSplit sp = detail::strip_sign(prod);
            row.coef[j] = sp.negative ? sp.magnitude : detail::negated(sp.magnitude);
          } else {
            Expr combined = detail::signed_sub(*row.coef[j], prod);
            if (combined.is_numeric() && combined.value().is_zero())
              row.coef[j] = std::nullopt;
            else
              row.coef[j] = combined;
          }
        }
        Expr rhs_prod = detail::signed_product(prow.rhs, a, /*grouped=*/true);
        if (!(rhs_prod.is_numeric() && rhs_prod.value().is_zero()))
          row.rhs = detail::signed_sub(row.rhs, rhs_prod);
        row.coef[step.pivot] = std::nullopt;
      }
      return out;
    }
    case GaussAction::back_substitute: {
      GaussRow& row = out.rows[step.pivot];
      Expr acc = row.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == step.pivot || !row.coef[j]) continue;
        bool solved_j = j < s.rows.size() && detail::is_one_coef(s.rows[j].coef[j]);
        if (solved_j) {
          for (std::size_t m = 0; m < n && solved_j; ++m)
            if (m != j && s.rows[j].coef[m]) solved_j = false;
        }
        Expr value = solved_j ? s.rows[j].rhs : Expr::name(s.variables[j]);
        detail::SignSplit sc = detail::strip_sign(*row.coef[j]);
        detail::SignSplit sv = detail::strip_sign(value);
        Expr mag = detail::is_one(sc.magnitude)
                       ? sv.magnitude
                       : Expr::group(Expr::bin(BinOp::mul, sv.magnitude, sc.magnitude));
        bool neg = sc.negative ^ sv.negative;
        acc = Expr::bin(neg ? BinOp::add : BinOp::sub, acc, mag);
        row.coef[j] = std::nullopt;
      }
      row.rhs = Expr::group(acc);
      return out;
    }
    case GaussAction::done:
      return std::nullopt;
  }
  return std::nullopt;
}

/// Replaces every compound coefficient (anything other than an atom or a
/// negated atom) by a fresh name, recording the substitution. Substituting
/// the names back recovers the original state.
inline std::pair<GaussState, std::map<std::string, Expr>> gauss_clean(
    const GaussState& s, const std::function<std::string()>& namer) {
  GaussState out = s;
  std::map<std::string, Expr> subs;

  std::vector<std::string> used = s.variables;
  for (const auto& row : s.rows) {
    for (const auto& c : row.coef)
      if (c) c->collect_names(used);
    row.rhs.collect_names(used);
  }

  auto fresh = [&]() -> std::string {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::string n = namer();
      bool clash = subs.count(n) > 0;
      for (const auto& u : used)
        if (u == n) clash = true;
      if (!clash) {
        used.push_back(n);
        return n;
      }
    }
    raise(errc::exhausted_retries, "could not draw a fresh clean-step name");
  };

  auto simple = [](const Expr& e) {
    return e.is_atom() || (e.is_neg() && e.child().is_atom());
  };
  auto replace = [&](Expr& e) {
    if (simple(e)) return;
    std::string n = fresh();
    subs.emplace(n, e);
    e = Expr::name(n);
  };

  for (auto& row : out.rows) {
    for (auto& c : row.coef) {
      if (!c) continue;
      Expr e = *c;
      replace(e);
      c = e;
    }
    replace(row.rhs);
  }
  return {out, subs};
}

/// Inverse of gauss_clean: substitutes the recorded names back.
inline GaussState gauss_unclean(const GaussState& s, const std::map<std::string, Expr>& subs) {
  GaussState out = s;
  auto restore = [&](Expr& e) {
    if (e.is_name()) {
      auto it = subs.find(e.name_token());
      if (it != subs.end()) e = it->second;
    }
  };
  for (auto& row : out.rows) {
    for (auto& c : row.coef) {
      if (!c) continue;
      Expr e = *c;
      restore(e);
      c = e;
    }
    restore(row.rhs);
  }
  return out;
}

}  // namespace mathrules
