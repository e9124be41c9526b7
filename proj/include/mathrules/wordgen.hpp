#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mathrules/rulegen.hpp"

namespace mathrules {

enum class WordKind { geometry, resistor, fruit_basket };
enum class Topology { series, parallel };
enum class FruitMode { symbolic, numerical };

/// One word problem with a chain-of-thought reference response and a
/// machine-checkable final answer (symbolic expression or exact rational).
struct WordProblem {
  WordKind kind = WordKind::geometry;
  std::string prompt;
  std::string reference_response;
  std::optional<Expr> final_expr;      // symbolic families
  std::optional<Rational> final_value; // numeric families
  int difficulty = 0;                  // geometry only
  std::map<std::string, std::string> config;
};

namespace worddetail {

inline const std::vector<std::string>& owners() {
  static const std::vector<std::string> v = {"Jim",   "Alice", "Bob",  "Sarah",
                                             "Tom",   "Maria", "John", "Emma",
                                             "Peter", "Lucy"};
  return v;
}

struct SurfaceNoun {
  const char* plural;
  const char* singular;
};

inline const std::vector<SurfaceNoun>& surfaces() {
  static const std::vector<SurfaceNoun> v = {{"swimming pools", "swimming pool"},
                                             {"fields", "field"},
                                             {"gardens", "garden"},
                                             {"terraces", "terrace"},
                                             {"playgrounds", "playground"}};
  return v;
}

inline std::string ordinal(int i) {
  static const char* names[] = {"first", "second", "third",   "fourth", "fifth",  "sixth",
                                "seventh", "eighth", "ninth", "tenth",  "eleventh", "twelfth"};
  if (i >= 1 && i <= 12) return names[i - 1];
  return std::to_string(i) + "th";
}

inline std::string rational_text(const Rational& r) {
  return r.is_integer() ? r.to_string()
                        : r.numerator().str() + "/" + r.denominator().str();
}

}  // namespace worddetail

/// Geometry word problem: shapes sharing an unknown side length x, total
/// area known. The induced polynomial a*x^2+b*x-A has one positive and one
/// negative root and a perfect-square discriminant; with probability
/// difficulty/100 the positive root is a non-integer rational.
inline WordProblem gen_geometry_quadratic(int difficulty, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 400; ++attempt) {
    // Shape instances: at least one square; rectangles, triangles and
    // parallelograms contribute integer multiples of x.
    int squares = 1 + static_cast<int>(rng.index(3));
    int rects = static_cast<int>(rng.index(4));
    int tris = static_cast<int>(rng.index(3));
    int paras = static_cast<int>(rng.index(3));
    if (rects + tris + paras == 0) rects = 1;

    struct Shape {
      std::string text;
      long long bx = 0;  // contribution to the linear coefficient
    };
    std::vector<Shape> shapes;
    long long a = squares, b = 0;
    for (int i = 0; i < squares; ++i)
      shapes.push_back({"a square, with an unknown side length x", 0});
    for (int i = 0; i < rects; ++i) {
      long long L = rng.uniform(1, 6);
      shapes.push_back({"a rectangle with one side measuring " + std::to_string(L) +
                            " meters and the other being the unknown side length x",
                        L});
    }
    for (int i = 0; i < tris; ++i) {
      long long base = 2 * rng.uniform(1, 3);  // even base keeps (base/2)*x integral
      shapes.push_back({"a triangle with a base of " + std::to_string(base) +
                            " meters and a height equal to the unknown side length x",
                        base / 2});
    }
    for (int i = 0; i < paras; ++i) {
      long long L = rng.uniform(1, 6);
      shapes.push_back({"a parallelogram with a base of " + std::to_string(L) +
                            " meters and a height equal to the unknown side length x",
                        L});
    }
    rng.shuffle(shapes);
    // Re-order so the first shape is a square, matching the figure's flow.
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (shapes[i].bx == 0 && shapes[i].text[2] == 's') {
        std::swap(shapes[0], shapes[i]);
        break;
      }
    }
    for (const auto& s : shapes) b += s.bx;
    if (b <= 0) continue;

    // Candidate perfect-square discriminants: delta = b^2+4aA = s^2 with
    // integer A > 0; the positive root (s-b)/(2a) is an integer iff
    // s == b (mod 2a).
    bool want_noninteger = rng.chance(difficulty / 100.0);
    std::vector<long long> svals;
    for (long long s = b + 1; s <= b + 160; ++s) {
      if ((s * s - b * b) % (4 * a) != 0) continue;
      bool integral_root = (s - b) % (2 * a) == 0;
      if (integral_root != want_noninteger) svals.push_back(s);
    }
    if (svals.empty()) continue;
    long long s = svals[rng.index(svals.size())];
    long long A = (s * s - b * b) / (4 * a);
    Rational root1 = Rational(s - b) / Rational(2 * a);
    Rational root2 = Rational(-(s + b)) / Rational(2 * a);

    const auto& noun = worddetail::surfaces()[rng.index(worddetail::surfaces().size())];
    const std::string owner = worddetail::owners()[rng.index(worddetail::owners().size())];

    std::string prompt = owner + " has a total of " + std::to_string(shapes.size()) + " " +
                         noun.plural + ".";
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (i == 0)
        prompt += " The first " + std::string(noun.singular) + " is " + shapes[i].text + ".";
      else
        prompt += " The " + worddetail::ordinal(static_cast<int>(i + 1)) + " is " +
                  shapes[i].text + ".";
    }
    prompt += " The total area covered by these " + std::string(noun.plural) + " is " +
              std::to_string(A) + " square meters. What is the unknown side length x?";

    // Equation text a*x^2+b*x = A with unit coefficients suppressed.
    std::string lhs = (a == 1 ? "x^2" : std::to_string(a) + "*x^2");
    lhs += "+" + (b == 1 ? std::string("x") : std::to_string(b) + "*x");
    std::string equation = lhs + " = " + std::to_string(A);

    QuadraticSolution sol = solve_quadratic(Rational(a), Rational(b), Rational(-A));
    std::string r1 = worddetail::rational_text(*sol.root1);
    std::string r2 = worddetail::rational_text(*sol.root2);
    Rational sq;
    sol.delta.sqrt_exact(sq);

    std::string response =
        "The total area is the sum of the areas of the " + std::string(noun.plural) +
        ". The area of a square with side x is x^2, and each remaining shape contributes a "
        "multiple of x, so the total area is " + lhs + " square meters. Therefore, the "
        "equation to solve is: " + equation + ". To solve the quadratic equation, we first "
        "calculate the discriminant Δ: Δ = b^2 - 4*a*c = " + std::to_string(b) + "^2 - 4*(" +
        std::to_string(a) + ")*(" + std::to_string(-A) + ") = " + sol.delta.to_string() +
        ". Since Δ > 0, the equation has two distinct real roots, calculated using the "
        "quadratic formula: x = (-b ± √Δ)/(2*a). Substituting the values, we get: root 1: (" +
        std::to_string(-b) + " + " + sq.to_string() + ")/" + (Rational(2) * Rational(a)).to_string() +
        " = " + r1 + ", root 2: (" + std::to_string(-b) + " - " + sq.to_string() + ")/" +
        (Rational(2) * Rational(a)).to_string() + " = " + r2 +
        ". Only one root is positive, so the solution is x = " + r1 + ".";

    WordProblem w;
    w.kind = WordKind::geometry;
    w.prompt = prompt;
    w.reference_response = response;
    w.final_value = root1;
    w.difficulty = difficulty;
    w.config["a"] = std::to_string(a);
    w.config["b"] = std::to_string(b);
    w.config["total_area"] = std::to_string(A);
    w.config["equation"] = equation;
    w.config["roots"] = r1 + "," + r2;
    w.config["positive_root"] = r1;
    w.config["noninteger"] = want_noninteger ? "true" : "false";
    (void)root2;
    return w;
  }
  raise(errc::generation_retry_exceeded, "no geometry draw satisfied the difficulty knob");
}

/// Resistor circuit word problem: n resistors all in series or all in
/// parallel; the unknown is U, I, or one of R1..Rn.
inline WordProblem gen_resistor(int n, Topology topology, const std::string& unknown,
                                std::uint64_t seed) {
  if (n < 2) raise(errc::degenerate_instance, "need at least two resistors");
  (void)seed;
  std::vector<std::string> rs;
  for (int i = 1; i <= n; ++i) rs.push_back("R" + std::to_string(i));

  std::string circuit = "[" + rs[0];
  for (int i = 1; i < n; ++i)
    circuit += (topology == Topology::series ? " - " : " || ") + rs[i];
  circuit += "]";

  Expr sum;
  if (topology == Topology::series) {
    sum = Expr::name(rs[0]);
    for (int i = 1; i < n; ++i) sum = Expr::bin(BinOp::add, sum, Expr::name(rs[i]));
  } else {
    sum = Expr::bin(BinOp::div, Expr::integer(1), Expr::name(rs[0]));
    for (int i = 1; i < n; ++i)
      sum = Expr::bin(BinOp::add, sum,
                      Expr::bin(BinOp::div, Expr::integer(1), Expr::name(rs[i])));
  }
  Equation eq{Expr::name("U"),
              topology == Topology::series ? Expr::bin(BinOp::mul, Expr::name("I"), sum)
                                           : Expr::bin(BinOp::div, Expr::name("I"), sum)};

  std::string ask;
  if (unknown == "U")
    ask = "express the voltage U in terms of the other variables.";
  else if (unknown == "I")
    ask = "express the current I in terms of the other variables.";
  else
    ask = "express the resistance of " + unknown + " in terms of the other variables.";

  WordProblem w;
  w.kind = WordKind::resistor;
  w.prompt = "You have a circuit with the following resistors: " + circuit +
             ". Given that the current flowing through the circuit is I amp and the voltage "
             "across the circuit is U volts, " + ask;

  Expr sol = solve_linear(eq, unknown);
  w.final_expr = sol;
  w.reference_response =
      "Using properties of resistors in series and parallel, and Ohm's law, we can determine "
      "that the equation governing the circuit is " + render(eq) +
      ". Isolating the unknown, we get the symbolic solution " + unknown + " = " + render(sol) +
      ".";
  w.config["topology"] = topology == Topology::series ? "series" : "parallel";
  w.config["unknown"] = unknown;
  w.config["n"] = std::to_string(n);
  w.config["equation"] = render(eq);
  return w;
}

/// Fruit-basket word problem. Fruit 1 has free variables p_1, q_A1, q_B1;
/// every later quantity and price is an integer multiple of one of those
/// three, constrained so the balance equation stays first-order in p_1.
inline WordProblem gen_fruit_basket(int n_fruits, FruitMode mode, std::uint64_t seed) {
  if (n_fruits < 2) raise(errc::degenerate_instance, "need at least two fruits");
  Rng rng(seed);
  static const std::vector<std::pair<const char*, const char*>> fruit_names = {
      {"bananas", "banana"},     {"blueberries", "blueberry"}, {"apples", "apple"},
      {"oranges", "orange"},     {"pears", "pear"},            {"cherries", "cherry"},
      {"strawberries", "strawberry"}, {"grapes", "grape"}};

  for (int attempt = 0; attempt < 200; ++attempt) {
    // Anchors: 0 = p_1 (degree 1 in the unknown), 1 = q_A1, 2 = q_B1.
    struct Ref {
      int anchor;
      long long mult;
    };
    auto draw_ref = [&rng](bool allow_p1) {
      int anchor = allow_p1 ? static_cast<int>(rng.index(3)) : 1 + static_cast<int>(rng.index(2));
      return Ref{anchor, rng.uniform(2, 9)};
    };

    std::vector<Ref> qa(n_fruits), qb(n_fruits), pr(n_fruits);
    for (int i = 1; i < n_fruits; ++i) {
      pr[i] = draw_ref(true);
      bool price_has_p1 = pr[i].anchor == 0;
      qa[i] = draw_ref(!price_has_p1);
      qb[i] = draw_ref(!price_has_p1);
    }

    // Monomials over x = p_1, y = q_A1, z = q_B1. anchor -> (x|y|z)
    auto anchor_xyz = [](int a) { return a == 0 ? "x" : a == 1 ? "y" : "z"; };
    auto anchor_name = [](int a) {
      return a == 0 ? std::string("p_1") : a == 1 ? std::string("q_A1") : std::string("q_B1");
    };

    // Term for quantity*price of fruit i on one side, in xyz names.
    auto term_xyz = [&](const Ref& q, const Ref& p) {
      long long coef = q.mult * p.mult;
      std::vector<std::string> factors = {anchor_xyz(q.anchor), anchor_xyz(p.anchor)};
      Expr e = Expr::name(factors[0]);
      e = Expr::bin(BinOp::mul, e, Expr::name(factors[1]));
      if (coef != 1) e = Expr::bin(BinOp::mul, Expr::integer(coef), e);
      return e;
    };

    Expr lhs = Expr::bin(BinOp::mul, Expr::name("y"), Expr::name("x"));
    Expr rhs = Expr::bin(BinOp::mul, Expr::name("z"), Expr::name("x"));
    for (int i = 1; i < n_fruits; ++i) {
      lhs = Expr::bin(BinOp::add, lhs, term_xyz(qa[i], Ref{0, 1}.anchor == 0 ? pr[i] : pr[i]));
      rhs = Expr::bin(BinOp::add, rhs, term_xyz(qb[i], pr[i]));
    }
    Equation balance{lhs, rhs};

    Expr sol_xyz;
    try {
      sol_xyz = solve_linear(balance, "x");
    } catch (const Error&) {
      continue;  // degenerate: p_1 coefficient vanished
    }
    Expr sol = substitute(sol_xyz, {{"y", Expr::name("q_A1")}, {"z", Expr::name("q_B1")}});

    // Prompt text.
    std::vector<std::pair<const char*, const char*>> fruits = fruit_names;
    rng.shuffle(fruits);
    fruits.resize(n_fruits);

    auto rel_text = [&](const std::string& lhs_name, const Ref& r) {
      return lhs_name + " = " + std::to_string(r.mult) + "*" + anchor_name(r.anchor);
    };

    std::string prompt = "Alice and Bob went to the grocery store and bought the following items:\n";
    prompt += "- " + std::string(fruits[0].first) + ": Alice bought q_A1, and Bob bought q_B1. "
              "The price of a single one is p_1.\n";
    for (int i = 1; i < n_fruits; ++i) {
      std::string qs = "q_A" + std::to_string(i + 1), qbs = "q_B" + std::to_string(i + 1),
                  ps = "p_" + std::to_string(i + 1);
      prompt += "- " + std::string(fruits[i].first) + ": Alice bought " + qs + " where " +
                rel_text(qs, qa[i]) + ", and Bob bought " + qbs + " where " +
                rel_text(qbs, qb[i]) + ". The price of a single one is " + ps + " where " +
                rel_text(ps, pr[i]) + ".\n";
    }

    std::string balance_names;
    {
      std::vector<std::string> l, r;
      for (int i = 0; i < n_fruits; ++i) {
        l.push_back("q_A" + std::to_string(i + 1) + "*p_" + std::to_string(i + 1));
        r.push_back("q_B" + std::to_string(i + 1) + "*p_" + std::to_string(i + 1));
      }
      balance_names = gendetail::join(l, "+") + " = " + gendetail::join(r, "+");
    }

    WordProblem w;
    w.kind = WordKind::fruit_basket;
    w.config["n_fruits"] = std::to_string(n_fruits);
    w.config["balance"] = render(balance);

    std::string cot =
        "Since both Alice and Bob ended up paying the same total price for the fruits they "
        "bought, we can set up the following equation: " + balance_names +
        ". We substitute the known relationships and let x = p_1, y = q_A1, z = q_B1. "
        "The equation becomes: " + render(balance) + ". Solving for x, we get: x = " +
        render(sol_xyz) + ".";

    if (mode == FruitMode::symbolic) {
      prompt += "Both ended up paying the same total price. Find the price of " +
                std::string(fruits[0].first) + " in terms of q_A1 and q_B1.";
      w.final_expr = sol;
      w.reference_response = cot + " Since x = p_1, y = q_A1, and z = q_B1, we have: p_1 = " +
                             render(sol) + ".";
      w.config["mode"] = "symbolic";
      w.config["answer"] = render(sol);
    } else {
      long long ya = rng.uniform(1, 5), zb = rng.uniform(1, 5);
      Rational value;
      try {
        value = evaluate(sol_xyz, {{"y", Rational(ya)}, {"z", Rational(zb)}});
      } catch (const Error&) {
        continue;  // assignment hit a singular denominator: resample
      }
      prompt += "Both ended up paying the same total price. Find the price of " +
                std::string(fruits[0].first) + ", given that q_A1 = " + std::to_string(ya) +
                " and q_B1 = " + std::to_string(zb) + ".";
      w.final_value = value;
      w.reference_response = cot + " Given that q_A1 = " + std::to_string(ya) + " and q_B1 = " +
                             std::to_string(zb) + ", we get: p_1 = " +
                             worddetail::rational_text(value) + ".";
      w.config["mode"] = "numerical";
      w.config["q_A1"] = std::to_string(ya);
      w.config["q_B1"] = std::to_string(zb);
      w.config["answer"] = worddetail::rational_text(value);
    }
    return w;
  }
  raise(errc::generation_retry_exceeded, "no nondegenerate fruit-basket draw");
}

/// Word problems share the rule-record JSONL schema.
inline RuleRecord to_record(const WordProblem& w, std::uint64_t seed,
                            const PromptTemplate& tmpl = {}) {
  RuleRecord r;
  switch (w.kind) {
    case WordKind::geometry: r.prompt_type = "geometry_quadratic"; break;
    case WordKind::resistor: r.prompt_type = "resistor_word"; break;
    case WordKind::fruit_basket:
      r.prompt_type = w.config.at("mode") == "symbolic" ? "fruit_basket_symbolic"
                                                        : "fruit_basket_numerical";
      break;
  }
  r.seed = seed;
  r.prompt = tmpl.wrap_question(w.prompt);
  r.answer = w.reference_response;
  r.original_expression = w.config.count("equation") ? w.config.at("equation")
                         : w.config.count("balance") ? w.config.at("balance")
                                                     : "";
  if (w.final_expr) {
    r.extras["answer_expression"] = render(*w.final_expr);
    std::vector<std::string> names;
    w.final_expr->collect_names(names);
    r.variables = names;
  }
  if (w.final_value) r.extras["final_value"] = w.final_value->to_string();
  if (w.kind == WordKind::geometry) {
    r.variables = {"x"};
    r.extras["roots"] = w.config.at("roots");
    r.extras["positive_root"] = w.config.at("positive_root");
    r.extras["difficulty"] = std::to_string(w.difficulty);
  }
  if (w.kind == WordKind::resistor) r.extras["target"] = w.config.at("unknown");
  for (const auto& [k, v] : w.config) r.extras.emplace(k, v);
  r.extras["question"] = w.prompt;
  return r;
}

}  // namespace mathrules
