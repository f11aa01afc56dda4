#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "support/oracles.hpp"
#include "tinv/error.hpp"
#include "tinv/expr.hpp"

using namespace tinv;

namespace {
const Chart kUVW({"u", "v", "w"});
}

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(Chart({"u"}), std::invalid_argument);
  CHECK_THROWS_AS(Chart({"u", "u"}), std::invalid_argument);
  CHECK_THROWS_AS(Chart({"u", "sin"}), std::invalid_argument);
  CHECK_THROWS_AS(Chart({"u", "2x"}), std::invalid_argument);
  CHECK(kUVW.dim() == 3);
  CHECK(kUVW.index_of("w") == 2);
  CHECK_FALSE(kUVW.index_of("q").has_value());
}

TEST_CASE("parse builds the expected tree") {
  const Expr e = parse("1/u", kUVW);
  REQUIRE(e.kind() == Expr::Kind::binary);
  CHECK(e.binary_op() == BinaryOp::div);
  CHECK(e.lhs() == Expr::constant(1.0));
  CHECK(e.rhs() == Expr::variable(0));

  const Expr sigma = parse("ln(1+u^2+v^2+w^2)", kUVW);
  auto sq = [](int i) { return Expr::binary(BinaryOp::pow, Expr::variable(i), Expr::constant(2.0)); };
  const Expr want = Expr::unary(
      UnaryOp::ln,
      Expr::binary(BinaryOp::add,
                   Expr::binary(BinaryOp::add, Expr::binary(BinaryOp::add, Expr::constant(1.0), sq(0)), sq(1)),
                   sq(2)));
  CHECK(sigma == want);
}

TEST_CASE("precedence and associativity") {
  const std::vector<double> x{2.0, 3.0, 0.5};
  CHECK(evaluate(parse("-u^2", kUVW), x) == -4.0);
  CHECK(evaluate(parse("u-v-w", kUVW), x) == doctest::Approx(-1.5));
  CHECK(evaluate(parse("u/v/w", kUVW), x) == doctest::Approx(2.0 / 3.0 / 0.5));
  CHECK(evaluate(parse("u^(-2)", kUVW), x) == 0.25);
  CHECK(evaluate(parse("2*u + 3*v", kUVW), x) == 13.0);
  CHECK(evaluate(parse("1.5e1 + w", kUVW), x) == 15.5);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("sin(q)", kUVW), ParseError);
  CHECK_THROWS_AS(parse("u +", kUVW), ParseError);
  CHECK_THROWS_AS(parse("(u", kUVW), ParseError);
  CHECK_THROWS_AS(parse("u^v", kUVW), ParseError);
  CHECK_THROWS_AS(parse("", kUVW), ParseError);
  CHECK_THROWS_AS(parse("u v", kUVW), ParseError);
  try {
    parse("u + $", kUVW);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("evaluation and domain errors") {
  const std::vector<double> p{1.0, 2.0, 3.0};
  CHECK(evaluate(parse("1/u", kUVW), p) == 1.0);
  CHECK(evaluate(parse("ln(1+u^2+v^2+w^2)", kUVW), p) == doctest::Approx(2.7080502011).epsilon(1e-10));
  CHECK_THROWS_AS(evaluate(parse("1/u", kUVW), std::vector<double>{0.0, 2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(evaluate(parse("ln(u-v)", kUVW), p), DomainError);
  CHECK_THROWS_AS(evaluate(parse("sqrt(u-v)", kUVW), p), DomainError);
  try {
    evaluate(parse("w + 1/(u-1)", kUVW), p);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("x0") != std::string::npos);  // names the offending subexpression
  }
}

TEST_CASE("print then parse is a fixed point") {
  const char* corpus[] = {"1/u",          "ln(1 + u^2 + v^2 + w^2)", "sin(u)^2",         "-u^2",
                          "(-u)^2",       "u^(-2)",                  "u - (v - w)",      "u/(v*w)",
                          "exp(-u*v)",    "sqrt(1 + u)*cos(v)",      "-(u + v)",         "2.5e-3*w",
                          "(u + v)^0.5",  "u - -v",                  "1/(1 + u^2)^3"};
  for (const char* text : corpus) {
    const Expr e1 = parse(text, kUVW);
    const Expr e2 = parse(print(e1, kUVW), kUVW);
    CHECK_MESSAGE(e1 == e2, text << " printed as " << print(e1, kUVW));
  }
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const Expr r = oracle::random_expr(rng, 3, 4);
    const Expr e1 = parse(print(r, kUVW), kUVW);
    const Expr e2 = parse(print(e1, kUVW), kUVW);
    REQUIRE_MESSAGE(e1 == e2, print(r, kUVW));
    const std::vector<double> x{0.3, -1.1, 1.7};
    CHECK(evaluate(e1, x) == evaluate(r, x));
  }
}

TEST_CASE("tree walk agrees with a stack machine to the last bit") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  int compared = 0;
  for (int k = 0; k < 1000; ++k) {
    const Expr e = oracle::random_expr(rng, 3, 1 + k % 5);
    const std::vector<double> x{coord(rng), coord(rng), coord(rng)};
    const double a = evaluate(e, x);
    const double b = oracle::stack_eval(e, x);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    ++compared;
  }
  CHECK(compared == 1000);
}

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int k = 0; k < 200; ++k) {
    const double v = d(rng);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(3.0) == "3");
}
