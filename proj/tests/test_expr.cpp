#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sympten/expr.hpp"

using namespace sympten;

TEST_CASE("parse and evaluate") {
  double x[4] = {0.3, -0.7, 1.2, 0.1};
  auto e = parse_expression("1 + x1*x2 - x3/2", 4);
  CHECK(e.eval(x) == doctest::Approx(1 + 0.3 * -0.7 - 1.2 / 2));

  CHECK(parse_expression("2^3^2", 1).eval(x) == doctest::Approx(512.0));  // right assoc
  CHECK(parse_expression("-x1^2", 4).eval(x) == doctest::Approx(-0.09));
  CHECK(parse_expression("exp(x4) * sin(x1) + cos(x2)", 4).eval(x) ==
        doctest::Approx(std::exp(0.1) * std::sin(0.3) + std::cos(-0.7)));
  CHECK(parse_expression("2e-1 + x1", 4).eval(x) == doctest::Approx(0.5));
  CHECK(parse_expression("(x1 + x2) * (x1 - x2)", 4).eval(x) ==
        doctest::Approx(0.09 - 0.49));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_expression("x5", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("1 +", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("foo(x1)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("sin x1", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("(x1", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("x1 x2", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("1/0", 1), std::invalid_argument);
}

TEST_CASE("symbolic derivatives against central differences") {
  const char* samples[] = {
      "x1*x2 + x3^3 - 2/x4",
      "exp(x1*x2) * sin(x3) + cos(x4^2)",
      "(1 + x1)^4 / (2 + x2)",
      "x1 - x2*x3*x4 + exp(-x1)",
  };
  double x[4] = {0.4, 0.9, -0.3, 1.3};
  for (const char* src : samples) {
    auto e = parse_expression(src, 4);
    for (int d = 0; d < 4; ++d) {
      auto de = e.derivative(d);
      const double h = 1e-6;
      double xp[4], xm[4];
      for (int i = 0; i < 4; ++i) xp[i] = xm[i] = x[i];
      xp[d] += h;
      xm[d] -= h;
      double fd = (e.eval(xp) - e.eval(xm)) / (2 * h);
      CHECK(de.eval(x) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(parse_expression("x1^x2", 2).derivative(0), std::domain_error);
}

TEST_CASE("derivatives of constants and simplification") {
  auto zero = parse_expression("0*x1 + 1 - 1", 1);
  CHECK(zero.is_constant_zero());
  auto e = parse_expression("x1^2", 1);
  auto d2 = e.derivative(0).derivative(0);
  double x[1] = {5.0};
  CHECK(d2.eval(x) == doctest::Approx(2.0));
  CHECK(e.derivative(0).derivative(0).derivative(0).is_constant_zero());
}
