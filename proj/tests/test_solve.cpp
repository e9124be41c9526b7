#include <catch2/catch_amalgamated.hpp>

#include "mathrules/algebra.hpp"
#include "mathrules/parse.hpp"
#include "mathrules/rng.hpp"

using namespace mathrules;

TEST_CASE("solve_linear: collected form with factored numerator") {
  Equation eq = parse_equation("13*x*y+24*y^2=17*x*z+12*y*z");
  Expr sol = solve_linear(eq, "x");
  CHECK(render(sol) == "12*y*(z-2*y)/(13*y-17*z)");

  // Substituting back satisfies the equation (oracle).
  Rng rng(31);
  int done = 0, guard = 0;
  while (done < 10) {
    REQUIRE(++guard < 500);
    Assignment sigma{{"y", Rational(rng.uniform(-9, 9))}, {"z", Rational(rng.uniform(-9, 9))}};
    try {
      sigma["x"] = evaluate(sol, sigma);
      CHECK(evaluate(eq.lhs, sigma) == evaluate(eq.rhs, sigma));
      ++done;
    } catch (const Error&) {
      continue;
    }
  }
}

TEST_CASE("solve_linear: structural inversion for single occurrences") {
  CHECK(render(solve_linear(parse_equation("u=v*(w+x)"), "x")) == "u/v-w");
  CHECK(render(solve_linear(parse_equation("u=v/(1/w+1/x)"), "x")) == "1/(v/u-1/w)");
  CHECK(render(solve_linear(parse_equation("u=v/(1/w+1/x)"), "w")) == "1/(v/u-1/x)");
  CHECK(render(solve_linear(parse_equation("U=I*(R1+R2)"), "U")) == "I*(R1+R2)");
  CHECK(render(solve_linear(parse_equation("U=I*(R1+R2)"), "I")) == "U/(R1+R2)");
  CHECK(render(solve_linear(parse_equation("U=I*(R1+R2)"), "R2")) == "U/I-R1");
}

TEST_CASE("solve_linear error cases") {
  CHECK_THROWS_AS(solve_linear(parse_equation("a=b"), "x"), Error);
  CHECK_THROWS_AS(solve_linear(parse_equation("x^2=4"), "x"), Error);
  CHECK_THROWS_AS(solve_linear(parse_equation("x+y=x+1"), "x"), Error);
  try {
    solve_linear(parse_equation("x+y=x+1"), "x");
  } catch (const Error& e) {
    CHECK(e.code() == errc::identically_zero_coefficient);
  }
}

TEST_CASE("solve_quadratic exact roots") {
  QuadraticSolution s = solve_quadratic(Rational(1), Rational(1), Rational(-2));
  CHECK(s.delta == Rational(9));
  CHECK(s.real_root_count == 2);
  REQUIRE(s.root1.has_value());
  REQUIRE(s.root2.has_value());
  CHECK(*s.root1 == Rational(1));
  CHECK(*s.root2 == Rational(-2));

  QuadraticSolution dbl = solve_quadratic(Rational(1), Rational(0), Rational(0));
  CHECK(dbl.delta == Rational(0));
  CHECK(dbl.real_root_count == 1);
  CHECK(*dbl.root1 == Rational(0));

  CHECK_THROWS_AS(solve_quadratic(Rational(0), Rational(1), Rational(1)), Error);
}

TEST_CASE("conjugate pair verified in exact complex-rational arithmetic") {
  QuadraticSolution s = solve_quadratic(Rational(1), Rational(2), Rational(5));
  CHECK(s.delta == Rational(-16));
  CHECK(s.real_root_count == 0);
  CHECK(s.real_part == Rational(-1));
  REQUIRE(s.imag_part.has_value());
  CHECK(*s.imag_part == Rational(2));

  // a*(re+im*i)^2 + b*(re+im*i) + c == 0, computed as (real, imaginary) pairs
  Rational a(1), b(2), c(5);
  Rational re = s.real_part, im = *s.imag_part;
  Rational sq_re = re * re - im * im, sq_im = Rational(2) * re * im;
  Rational total_re = a * sq_re + b * re + c;
  Rational total_im = a * sq_im + b * im;
  CHECK(total_re == Rational(0));
  CHECK(total_im == Rational(0));
}

TEST_CASE("quadratic roots satisfy the polynomial exactly (property)") {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    Rational a(rng.uniform(1, 10)), b(rng.uniform(-10, 10));
    // choose s so that delta = b^2 - 4ac = s^2 has an integer solution for c
    long long bb = static_cast<long long>(b.numerator());
    long long sv = bb + 2 * rng.uniform(1, 10) * static_cast<long long>(a.numerator());
    Rational c = (b * b - Rational(sv) * Rational(sv)) / (Rational(4) * a);
    QuadraticSolution s = solve_quadratic(a, b, c);
    REQUIRE(s.real_root_count >= 1);
    REQUIRE(s.root1.has_value());
    for (const auto& r : {s.root1, s.root2}) {
      if (!r) continue;
      CHECK(a * *r * *r + b * *r + c == Rational(0));
    }
  }
}
