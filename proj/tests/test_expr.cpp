#include <catch2/catch_amalgamated.hpp>

#include "mathrules/evaluate.hpp"
#include "mathrules/expr.hpp"
#include "mathrules/render.hpp"
#include "mathrules/terms.hpp"

using namespace mathrules;

TEST_CASE("make_atom validates names and decimals") {
  CHECK(render(make_atom(AtomKind::name, std::string("soccer"))) == "soccer");
  CHECK(render(make_atom(AtomKind::integer, Rational(0))) == "0");
  CHECK_THROWS_AS(make_atom(AtomKind::name, std::string("a+b")), Error);
  CHECK_THROWS_AS(make_atom(AtomKind::name, std::string("")), Error);
  CHECK_THROWS_AS(make_atom(AtomKind::name, std::string("with space")), Error);
  CHECK_THROWS_AS(make_atom(AtomKind::decimal, Rational(1) / Rational(3)), Error);
  CHECK(render(make_atom(AtomKind::decimal, Rational(1) / Rational(4))) == "0.25");
}

TEST_CASE("combine folds per policy") {
  Expr two = Expr::integer(2), three = Expr::integer(3);
  Expr folded = combine(BinOp::add, two, three);
  REQUIRE(folded.is_numeric());
  CHECK(folded.value() == Rational(5));

  Expr raw = combine(BinOp::add, two, three, SimplifyPolicy::all_off());
  CHECK(raw.is_bin(BinOp::add));
  CHECK(render(raw) == "2+3");

  Expr x = Expr::name("x");
  CHECK(render(combine(BinOp::mul, x, Expr::integer(1))) == "x");
  CHECK(combine(BinOp::mul, x, Expr::integer(1), SimplifyPolicy::all_off()).is_bin(BinOp::mul));
  CHECK(render(combine(BinOp::add, x, Expr::integer(0))) == "x");
  CHECK_THROWS_AS(combine(BinOp::div, two, Expr::integer(0)), Error);
  // 1/3 has no exact two-place representation: stays a node.
  CHECK(combine(BinOp::div, Expr::integer(1), three).is_bin(BinOp::div));
}

TEST_CASE("negate folds double negation and numeric atoms") {
  Expr x = Expr::name("x");
  CHECK(render(negate(Expr::integer(5))) == "-5");
  CHECK(negate(negate(x)) == x);
  CHECK(negate(Expr::neg(x), SimplifyPolicy::all_off()).is_neg());
  CHECK(render(negate(combine(BinOp::add, x, Expr::name("y"), SimplifyPolicy::all_off()))) ==
        "-(x+y)");
}

TEST_CASE("evaluate is exact") {
  Expr x = Expr::name("x");
  // x^2 + x - 2 at x = 1
  Expr e = Expr::bin(BinOp::sub,
                     Expr::bin(BinOp::add, Expr::bin(BinOp::pow, x, Expr::integer(2)), x),
                     Expr::integer(2));
  CHECK(evaluate(e, {{"x", Rational(1)}}) == Rational(0));
  CHECK(evaluate(Expr::integer(5), {}) == Rational(5));

  Expr a = Expr::name("a"), b = Expr::name("b");
  Expr sing = Expr::bin(BinOp::div, Expr::bin(BinOp::add, a, b),
                        Expr::bin(BinOp::sub, a, b));
  CHECK_THROWS_AS(evaluate(sing, {{"a", Rational(1)}, {"b", Rational(1)}}), Error);
  CHECK_THROWS_AS(evaluate(x, {}), Error);
}

TEST_CASE("terms_of flattens in order") {
  Expr x = Expr::name("x");
  auto single = terms_of(x, BinOp::add);
  REQUIRE(single.size() == 1);
  CHECK_FALSE(single[0].negative);

  // 5*cat*soccer -> [5, cat, soccer]
  Expr prod = Expr::bin(BinOp::mul, Expr::bin(BinOp::mul, Expr::integer(5), Expr::name("cat")),
                        Expr::name("soccer"));
  auto factors = terms_of(prod, BinOp::mul);
  REQUIRE(factors.size() == 3);
  CHECK(render(factors[0].term) == "5");
  CHECK(render(factors[1].term) == "cat");
  CHECK(render(factors[2].term) == "soccer");

  // a - b + c: signs travel with the terms
  Expr chain = Expr::bin(BinOp::add, Expr::bin(BinOp::sub, Expr::name("a"), Expr::name("b")),
                         Expr::name("c"));
  auto terms = terms_of(chain, BinOp::add);
  REQUIRE(terms.size() == 3);
  CHECK_FALSE(terms[0].negative);
  CHECK(terms[1].negative);
  CHECK_FALSE(terms[2].negative);
  CHECK(render(rebuild_sum(terms)) == "a-b+c");
}

TEST_CASE("leaves collect in first-occurrence order") {
  // (a+2)*(b-3): variables {a, 2, b, -3} as rendered strings
  Expr e = Expr::bin(BinOp::mul, Expr::bin(BinOp::add, Expr::name("a"), Expr::integer(2)),
                     Expr::bin(BinOp::sub, Expr::name("b"), Expr::integer(3)));
  std::vector<Expr> leaves;
  e.collect_leaves(leaves);
  REQUIRE(leaves.size() == 4);
  CHECK(render(leaves[0]) == "a");
  CHECK(render(leaves[1]) == "2");
  CHECK(render(leaves[2]) == "b");
  CHECK(render(leaves[3]) == "3");
}

TEST_CASE("structural equality is exact") {
  Expr a1 = Expr::bin(BinOp::add, Expr::integer(1), Expr::name("x"));
  Expr a2 = Expr::bin(BinOp::add, Expr::integer(1), Expr::name("x"));
  Expr b = Expr::bin(BinOp::add, Expr::name("x"), Expr::integer(1));
  CHECK(a1 == a2);
  CHECK(a1 != b);
  CHECK(Expr::integer(2) != Expr::decimal(Rational(2)));
  CHECK(Expr::group(a1) != a1);
}
