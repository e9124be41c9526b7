#include <catch2/catch_amalgamated.hpp>

#include "mathrules/evaluate.hpp"
#include "mathrules/parse.hpp"
#include "mathrules/render.hpp"
#include "mathrules/rng.hpp"

using namespace mathrules;

TEST_CASE("precedence and associativity") {
  Expr e = parse_expression("a*b-a*3");
  REQUIRE(e.is_bin(BinOp::sub));
  CHECK(e.lhs().is_bin(BinOp::mul));
  CHECK(e.rhs().is_bin(BinOp::mul));

  Expr p = parse_expression("bluesky^-3/bluesky^9");
  REQUIRE(p.is_bin(BinOp::div));
  CHECK(p.lhs().is_bin(BinOp::pow));
  CHECK(p.rhs().is_bin(BinOp::pow));
  CHECK(p.lhs().rhs().is_numeric());
  CHECK(p.lhs().rhs().value() == Rational(-3));

  Expr m = parse_expression("(3+x)*(y+5)");
  REQUIRE(m.is_bin(BinOp::mul));
  CHECK(m.lhs().is_bin(BinOp::add));
  CHECK(m.rhs().is_bin(BinOp::add));

  // left associativity for - and /, right for ^
  CHECK(render(parse_expression("a-b-c")) == "a-b-c");
  CHECK(parse_expression("a-b-c").lhs().is_bin(BinOp::sub));
  CHECK(parse_expression("a/b/c").lhs().is_bin(BinOp::div));
  CHECK(parse_expression("a^b^c").rhs().is_bin(BinOp::pow));

  // ^ binds tighter than unary minus
  Expr n = parse_expression("-2^2");
  REQUIRE(n.is_neg());
  CHECK(evaluate(n, {}) == Rational(-4));
}

TEST_CASE("errors carry positions") {
  CHECK_THROWS_WITH(parse_expression("a++b"), Catch::Matchers::ContainsSubstring("position"));
  CHECK_THROWS_AS(parse_expression("(a+b"), Error);
  CHECK_THROWS_AS(parse_expression(""), Error);
  CHECK_THROWS_AS(parse_expression("a=b"), Error);
  CHECK_THROWS_AS(parse_equation("a+b"), Error);
  CHECK_THROWS_AS(parse_equation("a=b=c"), Error);
  CHECK_THROWS_AS(parse_expression("1.234"), Error);
}

TEST_CASE("known-name segmentation") {
  NameSet known{"a", "b", "bluesky"};
  CHECK(parse_expression("bluesky", &known).is_name());
  CHECK_THROWS_AS(parse_expression("ab", &known), Error);
  try {
    parse_expression("ab+1", &known);
    FAIL("expected AmbiguousName");
  } catch (const Error& e) {
    CHECK(e.code() == errc::ambiguous_name);
  }
  // Unknown, non-segmentable runs stay plain names.
  CHECK(parse_expression("dogs", &known).is_name());
}

TEST_CASE("redundant parentheses survive as groups, forced ones do not") {
  // forced: re-parse drops nothing
  Expr forced = parse_expression("(a+b)*c");
  CHECK(render(forced) == "(a+b)*c");
  CHECK(forced.lhs().is_bin(BinOp::add));  // no Group: parens were forced

  // redundant: kept as a Group so bytes survive
  Expr redundant = parse_expression("(cat/9)*sky");
  CHECK(render(redundant) == "(cat/9)*sky");
  CHECK(redundant.lhs().is_group());

  CHECK(render(parse_expression("(blueberry/9)")) == "(blueberry/9)");
  CHECK(render(parse_expression("-(6+((blueberry/9)*3))")) == "-(6+((blueberry/9)*3))");
  CHECK(render(parse_expression("(bluesky^-3)/(bluesky^9)")) == "(bluesky^-3)/(bluesky^9)");
}

TEST_CASE("paper strings render byte-for-byte after a round trip") {
  const char* cases[] = {
      "a*b-a*3",
      "-5*blue+5*sky+soccer*blue-soccer*sky-dog*blue+dog*sky",
      "-9*x^2-3*y",
      "12*y*(z-2*y)/(13*y-17*z)",
      "u/v-w",
      "1/(v/u-1/w)",
      "bluesky^-12",
      "cat*5*soccer",
      "sky*(cat+dog-2-tree)+blueberry",
      "(-sky*blue)/(tree*-cloud)",
      "(-sky)/(tree)*(blue)/(-cloud)",
      "-9*dog-cat*sky=-blueberry",
      "dog+(cat/9)*sky=(blueberry/9)",
      "-(tree+(cat/9)*3)*sky=-(6+((blueberry/9)*3))",
      "sky=(6+((blueberry/9)*3))/(tree+(cat/9)*3)",
      "x^2+x-2=0",
      "a-(b-c)",
      "12.51+0.5*x",
  };
  for (const char* s : cases) {
    ParsedText p = parse_any(s);
    std::string out = p.is_equation() ? render(*p.equation) : render(*p.expr);
    CHECK(out == s);
  }
}

namespace {

// The family produced by the data generators: smart constructors only (so
// numeric negations fold the way the parser folds them), no redundant
// groups. Group byte-stability is covered by the dedicated paren tests.
Expr random_tree(Rng& rng, int depth) {
  if (depth <= 0 || rng.chance(0.35)) {
    switch (rng.index(4)) {
      case 0: return Expr::integer(rng.uniform(-20, 20));
      case 1:
        return Expr::decimal(Rational(BigInt(rng.uniform(-300, 300)), BigInt(100)));
      case 2: return Expr::name(std::string(1, static_cast<char>('a' + rng.index(26))));
      default: {
        std::string two;
        two += static_cast<char>('a' + rng.index(26));
        two += static_cast<char>('a' + rng.index(26));
        return Expr::name(two);
      }
    }
  }
  switch (rng.index(6)) {
    case 0: return Expr::bin(BinOp::add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 1: return Expr::bin(BinOp::sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 2: return Expr::bin(BinOp::mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 3: return Expr::bin(BinOp::div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4:
      return Expr::bin(BinOp::pow, random_tree(rng, depth - 1),
                       Expr::integer(rng.uniform(-9, 9)));
    default: return negate(random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("round trip: parse(render(e)) == e over 10^4 random trees") {
  Rng rng(20240613);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Expr e = random_tree(rng, 4);
    std::string s = render(e);
    Expr back = parse_expression(s);
    if (!(back == e)) {
      CAPTURE(s);
      CAPTURE(render(back));
      REQUIRE(back == e);
    }
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("round trip: render(parse(s)) == s for canonical strings") {
  Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    std::string s = render(random_tree(rng, 4));
    CHECK(render(parse_expression(s)) == s);
  }
}
