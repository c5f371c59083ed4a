#include "doctest.h"
#include "lusin/expr.hpp"

using namespace lusin;

TEST_CASE("expression grammar: constants, x, abs, min, arithmetic") {
  CHECK(Expression::parse("1.5")(0.0) == doctest::Approx(1.5));
  CHECK(Expression::parse("x")(2.0) == doctest::Approx(2.0));
  CHECK(Expression::parse("abs(x)")(-3.0) == doctest::Approx(3.0));
  CHECK(Expression::parse("min(1, x)")(0.25) == doctest::Approx(0.25));
  CHECK(Expression::parse("2 + 3 * x")(2.0) == doctest::Approx(8.0));
  CHECK(Expression::parse("1 - x - x")(1.0) == doctest::Approx(-1.0));  // left assoc
  CHECK(Expression::parse("0.1 * (1 - abs(x))")(0.5) == doctest::Approx(0.05));
  CHECK(Expression::parse("-x")(2.0) == doctest::Approx(-2.0));
  CHECK(Expression::parse("min(abs(x - 1), abs(x + 1))")(0.9) == doctest::Approx(0.1));
  CHECK(Expression::parse("1e-3")(0.0) == doctest::Approx(1e-3));
}

TEST_CASE("syntax errors are rejected as configuration problems") {
  for (const char* bad : {"", "1 +", "min(1)", "foo(2)", "(1", "1,2", "x x"}) {
    CHECK_THROWS_AS(Expression::parse(bad), Error);
  }
}

TEST_CASE("oracle binding: coordinate in 1-D, norm in 2-D") {
  Expression e = Expression::parse("x + 1");
  ValueOracle o1 = e.as_oracle(1);
  CHECK(o1.value(Point(-2.0)) == doctest::Approx(-1.0));
  ValueOracle o2 = e.as_oracle(2);
  CHECK(o2.value(Point(3.0, 4.0)) == doctest::Approx(6.0));
}
