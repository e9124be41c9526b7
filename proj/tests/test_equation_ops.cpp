#include <catch2/catch_amalgamated.hpp>

#include "mathrules/algebra.hpp"
#include "mathrules/parse.hpp"
#include "mathrules/rng.hpp"

using namespace mathrules;

namespace {

// Solution-set oracle: any assignment satisfying the input equation(s) must
// satisfy the output equation.
bool preserves_solutions(const std::vector<Equation>& inputs, const Equation& output,
                         const std::string& free_var, int points, std::uint64_t seed) {
  std::vector<std::string> names;
  for (const auto& e : inputs) {
    e.lhs.collect_names(names);
    e.rhs.collect_names(names);
  }
  output.lhs.collect_names(names);
  output.rhs.collect_names(names);
  Rng rng(seed);
  int done = 0, guard = 0;
  while (done < points) {
    if (++guard > points * 200) return true;  // too many singular draws; give up quietly
    Assignment sigma;
    for (const auto& n : names) sigma[n] = Rational(rng.uniform(-9, 9));
    try {
      bool all_hold = true;
      if (!free_var.empty()) {
        // solve the first input for free_var numerically instead of drawing
        Expr sol = solve_linear(inputs[0], free_var);
        sigma[free_var] = evaluate(sol, sigma);
      }
      for (const auto& e : inputs)
        if (evaluate(e.lhs, sigma) != evaluate(e.rhs, sigma)) all_hold = false;
      if (!all_hold) continue;
      if (evaluate(output.lhs, sigma) != evaluate(output.rhs, sigma)) return false;
      ++done;
    } catch (const Error&) {
      continue;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("equation_affine reproduces the worked example") {
  Equation e1 = parse_equation("cat+dog-2=tree");
  Equation out = equation_affine(e1, Expr::name("sky"), Expr::integer(8));
  CHECK(render(out) == "sky*cat+sky*dog-sky*2+8=sky*tree+8");
}

TEST_CASE("equation_affine identity and negative constant") {
  Equation e = parse_equation("x=y");
  CHECK(render(equation_affine(e, Expr::integer(1), Expr::integer(0))) == "x=y");
  Equation scaled = equation_affine(e, Expr::integer(2), Expr::integer(-1));
  CHECK(render(scaled) == "2*x-1=2*y-1");
  CHECK(preserves_solutions({e}, scaled, "x", 8, 5));
}

TEST_CASE("equation_simplify reproduces the worked example") {
  Equation eq = parse_equation("7*dog+sky*cat+sky*dog-sky*2+8=sky*tree+7*dog+8-blueberry");
  CHECK(render(equation_simplify(eq)) == "sky*(cat+dog-2-tree)+blueberry=0");
}

TEST_CASE("equation_simplify degenerate and gcd cases") {
  CHECK(render(equation_simplify(parse_equation("x=x"))) == "0=0");
  Equation eq = parse_equation("2*a+b=b-2*c");
  Equation out = equation_simplify(eq);
  CHECK(render(out) == "2*(a+c)=0");
  CHECK(preserves_solutions({eq}, out, "a", 8, 6));
}

TEST_CASE("combine_equations") {
  Equation e1 = parse_equation("x=1"), e2 = parse_equation("y=2");
  CHECK(render(combine_equations(e1, e2, Expr::integer(1), Expr::integer(1))) == "x+y=3");
  CHECK(render(combine_equations(e1, e2, Expr::integer(1), Expr::integer(0))) == "x=1");

  Equation a = parse_equation("a=b"), c = parse_equation("c=d");
  Equation out = combine_equations(a, c, Expr::integer(2), Expr::integer(-3));
  CHECK(render(out) == "2*a-3*c=2*b-3*d");

  // oracle: assignments satisfying both inputs satisfy the combination
  Rng rng(12);
  int done = 0;
  while (done < 10) {
    Assignment sigma;
    Rational vb(rng.uniform(-9, 9)), vd(rng.uniform(-9, 9));
    sigma["a"] = vb;
    sigma["b"] = vb;
    sigma["c"] = vd;
    sigma["d"] = vd;
    CHECK(evaluate(out.lhs, sigma) == evaluate(out.rhs, sigma));
    ++done;
  }
}

TEST_CASE("equations_equivalent uses the residual definition") {
  auto [v1, r1] = equations_equivalent(parse_equation("x=y"), parse_equation("x=y"));
  CHECK(v1);
  CHECK(render(r1) == "0");

  auto [v2, r2] = equations_equivalent(parse_equation("a+b=c"), parse_equation("a=c-b"));
  CHECK(v2);
  CHECK(render(r2) == "0");

  // Scalar multiples are NOT equivalent under the residual definition.
  auto [v3, r3] = equations_equivalent(parse_equation("x+1=2"), parse_equation("2*x+2=4"));
  CHECK_FALSE(v3);
  // residual is x-1 up to sign/factoring; check value-equivalence to -(x-1)
  CHECK(equivalent(r3, parse_expression("-(x-1)")));
}

TEST_CASE("substitute replaces leaves in a single pass") {
  Equation eq = parse_equation("dog-tree+sky=blueberry");
  Equation out = substitute(eq, {{"sky", Expr::integer(2)}, {"blueberry", Expr::name("cat")}});
  CHECK(render(out) == "dog-tree+2=cat");

  Expr e = parse_expression("x+x");
  Expr sub = substitute(e, {{"x", Expr::group(parse_expression("y+1"))}});
  CHECK(render(sub) == "(y+1)+(y+1)");
  // value check at random y
  for (long long y = -3; y <= 3; ++y) {
    Assignment sigma{{"y", Rational(y)}};
    CHECK(evaluate(sub, sigma) == Rational(2 * (y + 1)));
  }

  CHECK(render(substitute(parse_expression("a+b"), {})) == "a+b");
  // no re-substitution into substituted content
  Expr chain = substitute(parse_expression("x+y"), {{"x", Expr::name("y")}, {"y", Expr::integer(3)}});
  CHECK(render(chain) == "y+3");
  // numeric folds do run
  CHECK(render(substitute(parse_expression("x+1"), {{"x", Expr::integer(2)}})) == "3");
}
