#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mathrules/algebra.hpp"
#include "mathrules/vocab.hpp"

namespace mathrules {

/// "*_start Question *_mid Answer *_end", parts joined by single spaces and
/// empty parts skipped.
struct PromptTemplate {
  std::string start;
  std::string mid;
  std::string end;

  std::string wrap(const std::string& question, const std::string& answer) const {
    std::string out;
    auto append = [&out](const std::string& part) {
      if (part.empty()) return;
      if (!out.empty()) out += ' ';
      out += part;
    };
    append(start);
    append(question);
    append(mid);
    if (!answer.empty()) {
      append(answer);
      append(end);
    }
    return out;
  }

  std::string wrap_question(const std::string& question) const { return wrap(question, ""); }
};

/// One generated Q/A instance with grading metadata.
struct RuleRecord {
  std::string prompt;               // template-wrapped question
  std::string original_expression;  // the expression/equation/system shown
  std::string answer;               // full answer text
  std::vector<std::string> variables;  // atom leaves, first-occurrence order
  std::string prompt_type;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> extras;
};

inline const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "distributivity",   "commutativity",      "division",
      "exponentiation",   "variable_evaluation", "remarkable_identity",
      "single_equation",  "two_equations",       "gauss_step",
      "quadratic",        "first_order",         "simplify",
      "resistor"};
  return names;
}

/// Per-rule generation knobs. Train/test configurations are presets of this
/// struct, not code paths.
struct GenParams {
  VocabSpec vocab = build_vocab(VocabMode::restricted, {}, false);
  NameSpec name_spec{1, 3};
  double integer_probability = 0.10;
  long long int_lo = -10, int_hi = 10;  // integer leaves, zero excluded
  int terms_min = 1, terms_max = 5;
  int vars_min = 1, vars_max = 5;  // system sizes
  // quadratic coefficient regimes
  long long quad_ab_lo = -10, quad_ab_hi = 10;
  long long quad_c_lo = -100, quad_c_hi = 100;
  bool quad_positive_regime = false;  // a,b positive, c negative
  bool system_clean_pairs = false;    // also emit "clean"-step records
  PromptTemplate tmpl;
};

namespace gendetail {

struct Draw {
  GenParams const* params;
  Rng* rng;
  std::vector<std::string> used_names;

  std::string fresh_name() {
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::string n = sample_name(params->vocab, params->name_spec, *rng);
      bool dup = false;
      for (const auto& u : used_names)
        if (u == n) dup = true;
      if (!dup) {
        used_names.push_back(n);
        return n;
      }
    }
    raise(errc::exhausted_retries, "cannot draw a fresh variable name");
  }

  long long nonzero_int(long long lo, long long hi) {
    for (;;) {
      long long v = rng->uniform(lo, hi);
      if (v != 0) return v;
    }
  }

  /// One type: integer with the configured probability, else a fresh name.
  Expr type_atom() {
    if (rng->chance(params->integer_probability))
      return Expr::integer(nonzero_int(params->int_lo, params->int_hi));
    return Expr::name(fresh_name());
  }

  /// w1 (+|-) w2 ... chain of fresh types.
  Expr sum_chain(int n) {
    Expr acc = type_atom();
    for (int i = 1; i < n; ++i)
      acc = Expr::bin(rng->chance(0.5) ? BinOp::add : BinOp::sub, acc, type_atom());
    return acc;
  }

  Expr mul_chain(int n) {
    Expr acc = type_atom();
    for (int i = 1; i < n; ++i) acc = Expr::bin(BinOp::mul, acc, type_atom());
    return acc;
  }

  int term_count() { return static_cast<int>(rng->uniform(params->terms_min, params->terms_max)); }
};

inline std::vector<std::string> leaf_strings(const Expr& e) {
  std::vector<Expr> leaves;
  e.collect_leaves(leaves);
  std::vector<std::string> out;
  for (const auto& l : leaves) {
    std::string s = render(l);
    bool dup = false;
    for (const auto& o : out)
      if (o == s) dup = true;
    if (!dup) out.push_back(s);
  }
  return out;
}

inline std::vector<std::string> leaf_strings(const Equation& eq) {
  Expr both = Expr::bin(BinOp::add, eq.lhs, eq.rhs);
  return leaf_strings(both);
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace gendetail

namespace genrule {

using gendetail::Draw;

inline RuleRecord distributivity(Draw& d) {
  int n = d.term_count(), m = d.term_count();
  Expr a = d.sum_chain(n), b = d.sum_chain(m);
  Expr in = Expr::bin(BinOp::mul, Expr::group(a), Expr::group(b));
  Expr out = expand(in);
  RuleRecord r;
  r.prompt_type = "distributivity";
  r.original_expression = render(in);
  std::string answer_expr = render(out);
  r.answer = "By the distributivity property: " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(in);
  r.extras["question"] = "Expand this expression: " + r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  r.extras["bracket_terms"] = std::to_string(n) + "x" + std::to_string(m);
  return r;
}

inline RuleRecord remarkable_identity(Draw& d) {
  Expr a = d.type_atom(), b = d.type_atom();
  Expr base = Expr::bin(d.rng->chance(0.5) ? BinOp::add : BinOp::sub, a, b);
  Expr in = Expr::bin(BinOp::pow, base, Expr::integer(2));
  Expr out = expand(in);
  RuleRecord r;
  r.prompt_type = "remarkable_identity";
  r.original_expression = render(in);
  std::string answer_expr = render(out);
  r.answer = "By the remarkable identity properties: " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(in);
  r.extras["question"] = "Expand this expression: " + r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  return r;
}

inline RuleRecord commutativity(Draw& d) {
  bool multiplicative = d.rng->chance(0.5);
  int n = std::max(2, d.term_count());
  Expr e = multiplicative ? d.mul_chain(n) : d.sum_chain(n);
  auto terms = terms_of(e, multiplicative ? BinOp::mul : BinOp::add);
  std::size_t i = d.rng->index(terms.size());
  std::size_t j = d.rng->index(terms.size() - 1);
  if (j >= i) ++j;
  if (i > j) std::swap(i, j);
  Expr t1 = terms[i].term, t2 = terms[j].term;
  Expr out = commute(e, multiplicative ? BinOp::mul : BinOp::add, t1, t2);
  RuleRecord r;
  r.prompt_type = "commutativity";
  r.original_expression = render(e);
  std::string answer_expr = render(out);
  r.answer = "We get: " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(e);
  r.extras["question"] = std::string("Apply the commutativity property of ") +
                         (multiplicative ? "*" : "+") + " to " + render(t1) + "," + render(t2) +
                         " in " + r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  r.extras["t1"] = render(t1);
  r.extras["t2"] = render(t2);
  r.extras["op"] = multiplicative ? "*" : "+";
  return r;
}

inline RuleRecord division(Draw& d) {
  int which = static_cast<int>(d.rng->index(3));
  auto signed_atom = [&d]() {
    Expr a = d.type_atom();
    return d.rng->chance(0.3) && a.is_name() ? Expr::neg(a) : a;
  };
  Expr in;
  DivisionRule rule;
  switch (which) {
    case 0: {
      rule = DivisionRule::split_sum;
      Expr num = Expr::bin(d.rng->chance(0.5) ? BinOp::add : BinOp::sub, d.type_atom(),
                           d.type_atom());
      in = Expr::bin(BinOp::div, num, d.type_atom());
      break;
    }
    case 1: {
      rule = DivisionRule::split_product;
      Expr num = Expr::bin(BinOp::mul, signed_atom(), signed_atom());
      Expr den = Expr::bin(BinOp::mul, signed_atom(), signed_atom());
      in = Expr::bin(BinOp::div, Expr::group(num), den);
      break;
    }
    default: {
      rule = DivisionRule::nested;
      Expr num = Expr::bin(BinOp::div, d.type_atom(), d.type_atom());
      in = Expr::bin(BinOp::div, Expr::group(num), d.type_atom());
      break;
    }
  }
  Expr out = division_rewrite(in, rule);
  RuleRecord r;
  r.prompt_type = "division";
  r.original_expression = render(in);
  std::string answer_expr = render(out);
  r.answer = "By a property of the division: " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(in);
  r.extras["question"] = "Use a fundamental property of the division in " +
                         r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  r.extras["rule"] =
      which == 0 ? "split_sum" : which == 1 ? "split_product" : "nested";
  return r;
}

inline RuleRecord exponentiation(Draw& d) {
  int which = static_cast<int>(d.rng->index(5));
  Expr base = Expr::name(d.fresh_name());
  RuleRecord r;
  r.prompt_type = "exponentiation";
  auto pow = [](const Expr& b, long long n) {
    return Expr::bin(BinOp::pow, b, Expr::integer(n));
  };
  std::string question, answer_expr;
  switch (which) {
    case 0: {  // zero_power
      Expr in = pow(base, 0);
      r.original_expression = render(in);
      question = "Give the value of: " + r.original_expression + ".";
      answer_expr = r.original_expression + "=1";
      r.extras["rule"] = "zero_power";
      break;
    }
    case 1: {  // def_unfold
      long long mag = d.rng->uniform(2, 5);
      long long n = d.rng->chance(0.3) ? -mag : mag;
      Expr in = pow(base, n);
      r.original_expression = render(in);
      question = "Apply the definition of the exponentiation to: " + r.original_expression + ".";
      answer_expr = render(exponent_apply(in, ExponentRule::def_unfold));
      r.extras["rule"] = "def_unfold";
      break;
    }
    case 2: {  // merge_product
      long long n = d.nonzero_int(-9, 9), m = d.nonzero_int(-9, 9);
      Expr in = Expr::bin(BinOp::mul, Expr::group(pow(base, n)), Expr::group(pow(base, m)));
      r.original_expression = render(in);
      question = "Use a fundamental property of the exponentiation: " + r.original_expression + ".";
      answer_expr = render(exponent_apply(in, ExponentRule::merge_product));
      r.extras["rule"] = "merge_product";
      break;
    }
    case 3: {  // merge_base
      long long n = d.nonzero_int(-9, 9);
      Expr base2 = Expr::name(d.fresh_name());
      Expr in = Expr::bin(BinOp::mul, Expr::group(pow(base, n)), Expr::group(pow(base2, n)));
      r.original_expression = render(in);
      question = "Use a fundamental property of the exponentiation: " + r.original_expression + ".";
      answer_expr = render(exponent_apply(in, ExponentRule::merge_base));
      r.extras["rule"] = "merge_base";
      break;
    }
    default: {  // merge_quotient
      long long n = d.nonzero_int(-9, 9), m = d.nonzero_int(-9, 9);
      Expr in = Expr::bin(BinOp::div, Expr::group(pow(base, n)), Expr::group(pow(base, m)));
      r.original_expression = render(in);
      question = "Use a fundamental property of the exponentiation: " + r.original_expression + ".";
      answer_expr = render(exponent_apply(in, ExponentRule::merge_quotient));
      r.extras["rule"] = "merge_quotient";
      break;
    }
  }
  std::string phrase = which == 1 ? "By definition of the exponentiation: "
                                  : "By a property of the exponentiation: ";
  r.answer = phrase + answer_expr + ".";
  r.variables = gendetail::leaf_strings(parse_expression(r.original_expression));
  r.extras["question"] = question;
  r.extras["answer_expression"] = answer_expr;
  return r;
}

inline RuleRecord variable_evaluation(Draw& d) {
  Equation eq{d.sum_chain(d.term_count()), d.sum_chain(d.term_count())};
  std::vector<std::string> names;
  eq.lhs.collect_names(names);
  eq.rhs.collect_names(names);
  int k = names.empty() ? 0 : static_cast<int>(d.rng->index(std::min<std::size_t>(4, names.size() + 1)));
  std::vector<std::pair<std::string, Expr>> subs;
  std::vector<std::string> pool = names;
  for (int i = 0; i < k && !pool.empty(); ++i) {
    std::size_t pick = d.rng->index(pool.size());
    std::string name = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    Expr value = d.rng->chance(0.5)
                     ? Expr::integer(d.nonzero_int(d.params->int_lo, d.params->int_hi))
                     : Expr::name(d.fresh_name());
    subs.emplace_back(name, value);
  }
  Equation out = substitute(eq, subs);
  RuleRecord r;
  r.prompt_type = "variable_evaluation";
  r.original_expression = render(eq);
  std::vector<std::string> assumption_texts;
  for (const auto& [n, v] : subs) assumption_texts.push_back(n + "=" + render(v));
  std::string answer_expr = render(out);
  r.answer = "The evaluated expression: " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(eq);
  r.extras["question"] = "Assumptions: " + gendetail::join(assumption_texts, ",") +
                         ". Based on the assumptions, evaluate " + r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  r.extras["assumptions"] = gendetail::join(assumption_texts, ",");
  return r;
}

// Terms for the equation-manipulation rules: small products so that
// factoring and cancellation have something to do.
inline Expr equation_term(Draw& d) {
  switch (d.rng->index(3)) {
    case 0: return d.type_atom();
    case 1: return Expr::bin(BinOp::mul, d.type_atom(), d.type_atom());
    default:
      return Expr::bin(BinOp::mul, Expr::integer(d.nonzero_int(2, 9)),
                       Expr::name(d.fresh_name()));
  }
}

inline Expr equation_side(Draw& d, int n) {
  Expr acc = equation_term(d);
  for (int i = 1; i < n; ++i)
    acc = Expr::bin(d.rng->chance(0.5) ? BinOp::add : BinOp::sub, acc, equation_term(d));
  return acc;
}

inline RuleRecord single_equation(Draw& d) {
  bool affine = d.rng->chance(0.5);
  RuleRecord r;
  r.prompt_type = "single_equation";
  if (affine) {
    Equation eq{d.sum_chain(d.term_count()), d.sum_chain(std::max(1, d.term_count() - 1))};
    Expr m = d.rng->chance(0.7) ? Expr::name(d.fresh_name())
                                : Expr::integer(d.nonzero_int(2, 9));
    Expr c = d.rng->chance(0.7) ? Expr::integer(d.nonzero_int(d.params->int_lo, d.params->int_hi))
                                : Expr::name(d.fresh_name());
    Equation out = equation_affine(eq, m, c);
    r.original_expression = render(eq);
    std::string answer_expr = render(out);
    r.answer = "We get: ;" + answer_expr + ";.";
    r.variables = gendetail::leaf_strings(eq);
    r.extras["question"] = "Assumptions: E1 ;" + r.original_expression + ";. Compute: " +
                           render(m) + "*E1+" + render(c) + ".";
    r.extras["answer_expression"] = answer_expr;
    r.extras["skill"] = "affine";
    r.extras["m"] = render(m);
    r.extras["c"] = render(c);
  } else {
    // Build a side with a shared factor plus junk terms that appear on both
    // sides so the three-in-one simplification has work to do.
    std::string f = d.fresh_name();
    int inner_n = std::max(2, d.term_count() - 1);
    std::vector<SignedTerm> lhs_terms, rhs_terms;
    for (int i = 0; i < inner_n; ++i)
      lhs_terms.push_back({d.rng->chance(0.4), Expr::bin(BinOp::mul, Expr::name(f), d.type_atom())});
    rhs_terms.push_back({d.rng->chance(0.5), d.type_atom()});
    int junk = static_cast<int>(d.rng->index(3));
    for (int i = 0; i < junk; ++i) {
      SignedTerm t{d.rng->chance(0.5), equation_term(d)};
      lhs_terms.push_back(t);
      rhs_terms.push_back(t);
    }
    Rng shuffle_rng(d.rng->next());
    shuffle_rng.shuffle(lhs_terms);
    shuffle_rng.shuffle(rhs_terms);
    Equation eq{rebuild_sum(lhs_terms), rebuild_sum(rhs_terms)};
    Equation out = equation_simplify(eq);
    r.original_expression = render(eq);
    std::string answer_expr = render(out);
    r.answer = "We get: ;" + answer_expr + ";.";
    r.variables = gendetail::leaf_strings(eq);
    r.extras["question"] = "Simplify the equation: ;" + r.original_expression + ";.";
    r.extras["answer_expression"] = answer_expr;
    r.extras["skill"] = "simplify";
  }
  return r;
}

inline RuleRecord two_equations(Draw& d) {
  bool combine_skill = d.rng->chance(0.5);
  RuleRecord r;
  r.prompt_type = "two_equations";
  Equation e1{d.sum_chain(d.term_count()), d.sum_chain(std::max(1, d.term_count() - 1))};
  if (combine_skill) {
    Equation e2{d.sum_chain(d.term_count()), d.sum_chain(std::max(1, d.term_count() - 1))};
    Expr w1 = d.rng->chance(0.6) ? Expr::integer(d.nonzero_int(-9, 9))
                                 : Expr::name(d.fresh_name());
    Expr w2 = d.rng->chance(0.6) ? Expr::integer(d.nonzero_int(-9, 9))
                                 : Expr::name(d.fresh_name());
    Equation out = combine_equations(e1, e2, w1, w2);
    r.original_expression = render(e1) + " ; " + render(e2);
    std::string answer_expr = render(out);
    r.answer = "We get: ;" + answer_expr + ";.";
    r.variables = gendetail::leaf_strings(
        Equation{Expr::bin(BinOp::add, e1.lhs, e2.lhs), Expr::bin(BinOp::add, e1.rhs, e2.rhs)});
    r.extras["question"] = "Assumptions: E1 ;" + render(e1) + ";, E2 ;" + render(e2) +
                           ";. Compute: " + render(w1) + "*E1+" + render(w2) + "*E2.";
    r.extras["answer_expression"] = answer_expr;
    r.extras["skill"] = "combine";
    r.extras["e1"] = render(e1);
    r.extras["e2"] = render(e2);
  } else {
    bool make_equivalent = d.rng->chance(0.5);
    Equation e2 = e1;
    if (make_equivalent) {
      // Move the last lhs term across the equals sign.
      auto terms = additive_terms(e1.lhs);
      if (terms.size() > 1) {
        SignedTerm moved = terms.back();
        terms.pop_back();
        e2.lhs = rebuild_sum(terms);
        e2.rhs = Expr::bin(moved.negative ? BinOp::add : BinOp::sub, e1.rhs, moved.term);
      } else {
        std::swap(e2.lhs, e2.rhs);
      }
    } else {
      e2.rhs = Expr::bin(d.rng->chance(0.5) ? BinOp::add : BinOp::sub, e1.rhs, d.type_atom());
    }
    auto [verdict, residual] = equations_equivalent(e1, e2);
    r.original_expression = render(e1) + " ; " + render(e2);
    r.answer = verdict ? "Yes, the two equations are equivalent."
                       : "No, the two equations are not equivalent. The residual is: " +
                             render(residual) + ".";
    r.variables = gendetail::leaf_strings(
        Equation{Expr::bin(BinOp::add, e1.lhs, e2.lhs), Expr::bin(BinOp::add, e1.rhs, e2.rhs)});
    r.extras["question"] = "Assumptions: E1 ;" + render(e1) + ";, E2 ;" + render(e2) +
                           ";. Are E1 and E2 equivalent?";
    r.extras["skill"] = "equivalence";
    r.extras["verdict"] = verdict ? "yes" : "no";
    r.extras["residual"] = render(residual);
    r.extras["e1"] = render(e1);
    r.extras["e2"] = render(e2);
  }
  return r;
}

inline RuleRecord quadratic(Draw& d) {
  const GenParams& p = *d.params;
  for (int attempt = 0; attempt < 200; ++attempt) {
    long long a = p.quad_positive_regime ? d.rng->uniform(1, p.quad_ab_hi)
                                         : d.nonzero_int(p.quad_ab_lo, p.quad_ab_hi);
    long long b = p.quad_positive_regime ? d.rng->uniform(1, p.quad_ab_hi)
                                         : d.nonzero_int(p.quad_ab_lo, p.quad_ab_hi);
    // Perfect-square discriminants only: enumerate c candidates.
    std::vector<long long> candidates;
    long long c_lo = p.quad_positive_regime ? p.quad_c_lo : p.quad_c_lo;
    long long c_hi = p.quad_positive_regime ? -1 : p.quad_c_hi;
    for (long long c = c_lo; c <= c_hi; ++c) {
      if (c == 0) continue;
      long long delta = b * b - 4 * a * c;
      if (delta < 0) continue;
      long long s = static_cast<long long>(std::sqrt(static_cast<double>(delta)));
      while (s * s < delta) ++s;
      while (s * s > delta) --s;
      if (s * s == delta) candidates.push_back(c);
    }
    if (candidates.empty()) continue;
    long long c = candidates[d.rng->index(candidates.size())];

    std::string x = d.fresh_name();
    QuadraticSolution sol = solve_quadratic(Rational(a), Rational(b), Rational(c));

    // a*x^2 + b*x + c = 0 with unit coefficients suppressed.
    auto coef_term = [&](long long v, const Expr& mono) {
      if (v == 1) return mono;
      if (v == -1) return Expr::neg(mono);
      return Expr::bin(BinOp::mul, Expr::integer(v), mono);
    };
    Expr xe = Expr::name(x);
    Expr x2 = Expr::bin(BinOp::pow, xe, Expr::integer(2));
    Expr lhs = coef_term(a, x2);
    lhs = Expr::bin(b < 0 ? BinOp::sub : BinOp::add, lhs, coef_term(b < 0 ? -b : b, xe));
    lhs = Expr::bin(c < 0 ? BinOp::sub : BinOp::add, lhs, Expr::integer(c < 0 ? -c : c));
    Equation eq{lhs, Expr::integer(0)};

    RuleRecord r;
    r.prompt_type = "quadratic";
    r.original_expression = render(eq);
    r.variables = gendetail::leaf_strings(eq);
    r.extras["question"] = "Solve this quadratic equation: " + r.original_expression + ".";
    r.extras["a"] = std::to_string(a);
    r.extras["b"] = std::to_string(b);
    r.extras["c"] = std::to_string(c);
    r.extras["delta"] = sol.delta.to_string();

    std::string delta_text = "Δ = b^2 - 4*a*c = " + std::to_string(b) + "^2 - 4*(" +
                             std::to_string(a) + ")*(" + std::to_string(c) + ") = " +
                             sol.delta.to_string();
    Rational two_a = Rational(2) * Rational(a);
    if (sol.real_root_count == 2) {
      std::string r1 = sol.root1->to_string(), r2 = sol.root2->to_string();
      Rational sq;
      sol.delta.sqrt_exact(sq);
      r.answer = "To solve this quadratic equation, we first calculate the discriminant Δ: " +
                 delta_text + ". Since Δ > 0, the equation has two distinct real roots, " +
                 "calculated using the quadratic formula: " + x +
                 " = (-b ± √Δ)/(2*a). Substituting the values, we get: root 1: (" +
                 std::to_string(-b) + " + " + sq.to_string() + ")/" + two_a.to_string() +
                 " = " + r1 + ", root 2: (" + std::to_string(-b) + " - " + sq.to_string() +
                 ")/" + two_a.to_string() + " = " + r2 + ".";
      r.extras["roots"] = r1 + "," + r2;
    } else {
      std::string r1 = sol.root1->to_string();
      r.answer = "To solve this quadratic equation, we first calculate the discriminant Δ: " +
                 delta_text + ". Since Δ = 0, the equation has exactly one real root: root 1: " +
                 r1 + ".";
      r.extras["roots"] = r1;
    }
    r.extras["answer_expression"] = r.extras["roots"];
    return r;
  }
  raise(errc::generation_retry_exceeded, "no perfect-square discriminant found");
}

inline RuleRecord first_order(Draw& d) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::string x = d.fresh_name();
    Expr xe = Expr::name(x);
    auto side = [&](int terms, bool force_x) {
      std::vector<SignedTerm> out;
      for (int i = 0; i < terms; ++i) {
        bool with_x = (force_x && i == 0) || d.rng->chance(0.4);
        long long coef = d.nonzero_int(1, 20);
        Expr base = with_x ? xe : Expr::name(d.fresh_name());
        Expr mono;
        if (d.rng->chance(0.5)) {
          Expr other = Expr::name(d.fresh_name());
          mono = with_x ? Expr::bin(BinOp::mul, Expr::bin(BinOp::mul, Expr::integer(coef), base),
                                    other)
                        : Expr::bin(BinOp::mul, Expr::bin(BinOp::mul, Expr::integer(coef), base),
                                    other);
        } else if (!with_x && d.rng->chance(0.3)) {
          mono = Expr::bin(BinOp::mul, Expr::integer(coef),
                           Expr::bin(BinOp::pow, base, Expr::integer(2)));
        } else {
          mono = Expr::bin(BinOp::mul, Expr::integer(coef), base);
        }
        out.push_back({i > 0 && d.rng->chance(0.4), mono});
      }
      return rebuild_sum(out);
    };
    int nl = std::max(2, d.term_count()), nr = std::max(2, d.term_count());
    Equation eq{side(nl, true), side(nr, d.rng->chance(0.5))};
    try {
      Expr sol = solve_linear(eq, x);
      RuleRecord r;
      r.prompt_type = "first_order";
      r.original_expression = render(eq);
      std::string answer_expr = render(sol);
      r.answer = x + " = " + answer_expr + ".";
      r.variables = gendetail::leaf_strings(eq);
      r.extras["question"] =
          "Solve for the variable " + x + " in the equation: " + r.original_expression + ".";
      r.extras["answer_expression"] = answer_expr;
      r.extras["target"] = x;
      return r;
    } catch (const Error&) {
      d.used_names.clear();
      continue;  // degenerate draw (zero coefficient): resample
    }
  }
  raise(errc::generation_retry_exceeded, "no solvable first-order draw");
}

inline RuleRecord simplify(Draw& d) {
  // Basis monomials referenced several times so grouping has work to do.
  int basis_n = 1 + static_cast<int>(d.rng->index(3));
  std::vector<Expr> basis;
  for (int i = 0; i < basis_n; ++i) {
    Expr name = Expr::name(d.fresh_name());
    if (d.rng->chance(0.4))
      basis.push_back(Expr::bin(BinOp::pow, name, Expr::integer(2)));
    else if (d.rng->chance(0.3))
      basis.push_back(Expr::bin(BinOp::mul, name, Expr::name(d.fresh_name())));
    else
      basis.push_back(name);
  }
  int terms = std::max(2, d.term_count());
  std::vector<SignedTerm> chain;
  for (int i = 0; i < terms; ++i) {
    Expr b = basis[d.rng->index(basis.size())];
    long long coef = d.nonzero_int(1, 10);
    Expr mono = coef == 1 ? b : Expr::bin(BinOp::mul, Expr::integer(coef), b);
    bool neg = i == 0 ? d.rng->chance(0.3) : d.rng->chance(0.5);
    if (i == 0 && neg) {
      mono = coef == 1 ? Expr::neg(b) : Expr::bin(BinOp::mul, Expr::integer(-coef), b);
      chain.push_back({false, mono});
    } else {
      chain.push_back({i > 0 && neg, mono});
    }
  }
  Expr in = rebuild_sum(chain);
  Expr out = collect_simplify(in);
  RuleRecord r;
  r.prompt_type = "simplify";
  r.original_expression = render(in);
  std::string answer_expr = render(out);
  r.answer = "By grouping terms: " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(in);
  r.extras["question"] = "Simplify the following expression: " + r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  return r;
}

inline RuleRecord resistor(Draw& d) {
  bool series = d.rng->chance(0.5);
  int n = 2 + static_cast<int>(d.rng->index(3));
  Expr w1 = Expr::name(d.fresh_name());
  Expr w2 = Expr::name(d.fresh_name());
  std::vector<std::string> inner_names;
  for (int i = 0; i < n; ++i) inner_names.push_back(d.fresh_name());
  Expr sum;
  if (series) {
    sum = Expr::name(inner_names[0]);
    for (int i = 1; i < n; ++i) sum = Expr::bin(BinOp::add, sum, Expr::name(inner_names[i]));
  } else {
    sum = Expr::bin(BinOp::div, Expr::integer(1), Expr::name(inner_names[0]));
    for (int i = 1; i < n; ++i)
      sum = Expr::bin(BinOp::add, sum,
                      Expr::bin(BinOp::div, Expr::integer(1), Expr::name(inner_names[i])));
  }
  Equation eq{w1, series ? Expr::bin(BinOp::mul, w2, sum) : Expr::bin(BinOp::div, w2, sum)};
  std::vector<std::string> all = {render(w1), render(w2)};
  all.insert(all.end(), inner_names.begin(), inner_names.end());
  std::string target = all[d.rng->index(all.size())];
  Expr sol = solve_linear(eq, target);
  RuleRecord r;
  r.prompt_type = "resistor";
  r.original_expression = render(eq);
  std::string answer_expr = render(sol);
  r.answer = target + " = " + answer_expr + ".";
  r.variables = gendetail::leaf_strings(eq);
  r.extras["question"] = "Solve for the variable " + target + " in " + r.original_expression + ".";
  r.extras["answer_expression"] = answer_expr;
  r.extras["target"] = target;
  r.extras["topology"] = series ? "series" : "parallel";
  return r;
}

// Gauss systems ---------------------------------------------------------

inline GaussState random_gauss_system(Draw& d, int n) {
  GaussState s;
  for (int i = 0; i < n; ++i) s.variables.push_back(d.fresh_name());
  for (int row = 0; row < n; ++row) {
    GaussRow gr;
    for (int j = 0; j < n; ++j) {
      Expr mag = d.rng->chance(0.4)
                     ? Expr::integer(d.rng->uniform(1, 9))
                     : Expr::name(d.fresh_name());
      gr.coef.push_back(d.rng->chance(0.4) ? negate(mag) : mag);
    }
    Expr rmag = d.rng->chance(0.5) ? Expr::integer(d.rng->uniform(1, 9))
                                   : Expr::name(d.fresh_name());
    gr.rhs = d.rng->chance(0.4) ? negate(rmag) : rmag;
    s.rows.push_back(std::move(gr));
  }
  return s;
}

inline std::string gauss_question(const GaussState& s) {
  std::vector<std::string> vars = s.variables;
  return "The variables: " + gendetail::join(vars, ",") +
         ". Perform one step of Gaussian elimination: " + render(s) + ".";
}

struct GaussTransition {
  GaussState before;
  std::optional<GaussState> after;  // nullopt = terminal
  int index = 0;
};

inline std::vector<GaussTransition> gauss_trace(const GaussState& start, int max_steps = 64) {
  std::vector<GaussTransition> out;
  GaussState cur = start;
  for (int i = 0; i < max_steps; ++i) {
    auto next = gauss_step(cur);
    if (!next) {
      out.push_back({cur, std::nullopt, i});
      return out;
    }
    out.push_back({cur, *next, i});
    cur = *next;
  }
  raise(errc::generation_retry_exceeded, "gauss trace did not terminate");
}

inline RuleRecord gauss_record_from(const GaussState& before, const std::optional<GaussState>& after,
                                    int index, bool clean, Draw& d) {
  RuleRecord r;
  r.prompt_type = "gauss_step";
  GaussState q_state = before;
  std::optional<GaussState> a_state = after;
  std::map<std::string, Expr> subs;
  if (clean) {
    auto namer = [&d]() { return d.fresh_name(); };
    auto cleaned = gauss_clean(before, namer);
    q_state = cleaned.first;
    subs = cleaned.second;
    a_state = gauss_step(q_state);  // one step on the cleaned system
  }
  r.original_expression = render(q_state);
  r.extras["question"] = gauss_question(q_state);
  r.extras["step_index"] = std::to_string(index);
  r.extras["clean"] = clean ? "true" : "false";
  std::vector<std::string> vars = q_state.variables;
  r.extras["system_variables"] = gendetail::join(vars, ",");
  if (a_state) {
    std::string next_text = render(*a_state);
    r.answer = "We get: " + next_text + ".";
    r.extras["answer_system"] = next_text;
  } else {
    r.answer = "The system is already simplified.";
    r.extras["answer_system"] = "";
  }
  r.variables = q_state.variables;
  return r;
}

inline RuleRecord gauss_step_record(Draw& d) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    int n = static_cast<int>(d.rng->uniform(d.params->vars_min, d.params->vars_max));
    GaussState start = random_gauss_system(d, n);
    std::vector<GaussTransition> trace;
    try {
      trace = gauss_trace(start);
    } catch (const Error&) {
      d.used_names.clear();
      continue;  // singular pivot: resample
    }
    const GaussTransition& t = trace[d.rng->index(trace.size())];
    bool clean = d.params->system_clean_pairs && d.rng->chance(0.5) && t.after.has_value();
    return gauss_record_from(t.before, t.after, t.index, clean, d);
  }
  raise(errc::generation_retry_exceeded, "no nonsingular system draw");
}

}  // namespace genrule

/// Deterministic record generation: identical (rule, params, seed) yields a
/// byte-identical record.
inline RuleRecord gen_record(const std::string& rule, const GenParams& params,
                             std::uint64_t seed) {
  Rng rng(seed);
  genrule::Draw d{&params, &rng, {}};
  RuleRecord r;
  if (rule == "distributivity") r = genrule::distributivity(d);
  else if (rule == "commutativity") r = genrule::commutativity(d);
  else if (rule == "division") r = genrule::division(d);
  else if (rule == "exponentiation") r = genrule::exponentiation(d);
  else if (rule == "variable_evaluation") r = genrule::variable_evaluation(d);
  else if (rule == "remarkable_identity") r = genrule::remarkable_identity(d);
  else if (rule == "single_equation") r = genrule::single_equation(d);
  else if (rule == "two_equations") r = genrule::two_equations(d);
  else if (rule == "gauss_step") r = genrule::gauss_step_record(d);
  else if (rule == "quadratic") r = genrule::quadratic(d);
  else if (rule == "first_order") r = genrule::first_order(d);
  else if (rule == "simplify") r = genrule::simplify(d);
  else if (rule == "resistor") r = genrule::resistor(d);
  else raise(errc::generation_retry_exceeded, "unknown rule: " + rule);
  r.seed = seed;
  r.prompt = params.tmpl.wrap_question(r.extras.at("question"));
  return r;
}

/// All step-pair records for one drawn system: a raw record per transition
/// plus a terminal record; with system_clean_pairs, a clean record per
/// non-terminal transition and a clean terminal as well.
inline std::vector<RuleRecord> gen_system_pairs(const GenParams& params, std::uint64_t seed) {
  Rng rng(seed);
  genrule::Draw d{&params, &rng, {}};
  for (int attempt = 0; attempt < 50; ++attempt) {
    int n = static_cast<int>(rng.uniform(params.vars_min, params.vars_max));
    GaussState start = genrule::random_gauss_system(d, n);
    std::vector<genrule::GaussTransition> trace;
    try {
      trace = genrule::gauss_trace(start);
    } catch (const Error&) {
      d.used_names.clear();
      continue;
    }
    std::vector<RuleRecord> out;
    for (const auto& t : trace) {
      RuleRecord r = genrule::gauss_record_from(t.before, t.after, t.index, false, d);
      r.seed = seed;
      r.prompt = params.tmpl.wrap_question(r.extras.at("question"));
      out.push_back(std::move(r));
    }
    if (params.system_clean_pairs) {
      for (const auto& t : trace) {
        RuleRecord r = genrule::gauss_record_from(t.before, t.after, t.index, true, d);
        r.seed = seed;
        r.prompt = params.tmpl.wrap_question(r.extras.at("question"));
        out.push_back(std::move(r));
      }
    }
    return out;
  }
  raise(errc::generation_retry_exceeded, "no nonsingular system draw");
}

/// Training string (or question-only evaluation string) for a record.
inline std::string render_prompt(const RuleRecord& r, const PromptTemplate& t,
                                 bool question_only = false) {
  const std::string& q = r.extras.count("question") ? r.extras.at("question") : r.prompt;
  return question_only ? t.wrap_question(q) : t.wrap(q, r.answer);
}

}  // namespace mathrules
