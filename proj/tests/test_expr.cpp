#include "fde/expr.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fde;

namespace {

ExprError expr_error(std::string_view src, std::set<Var> vars = {Var::T, Var::U, Var::V}) {
  try {
    parse_expr(src, std::move(vars));
  } catch (const ExprError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for '" << src << "'";
  return ExprError(Errc::SyntaxError, 0, {}, {}, "");
}

// Random well-formed source text over t, u, v.
std::string random_source(std::mt19937& gen, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
  std::uniform_int_distribution<int> digit(1, 9);
  switch (pick(gen)) {
    case 0: return std::to_string(digit(gen));
    case 1: return std::string(1, "tuv"[digit(gen) % 3]);
    case 2: return digit(gen) % 2 ? "pi" : "0.25";
    case 3: return "(" + random_source(gen, depth - 1) + " + " + random_source(gen, depth - 1) + ")";
    case 4: return random_source(gen, depth - 1) + " * " + random_source(gen, depth - 1);
    case 5: return random_source(gen, depth - 1) + " - (" + random_source(gen, depth - 1) + ")";
    case 6: return "exp(" + random_source(gen, depth - 1) + "/9)";
    default: return "-" + random_source(gen, depth - 1) + "/" + std::to_string(digit(gen));
  }
}

}  // namespace

TEST(Expr, EvaluatesArithmetic) {
  EXPECT_DOUBLE_EQ(parse_expr("1 + 2*3")(0.0), 7.0);
  EXPECT_DOUBLE_EQ(parse_expr("(1 + 2)*3")(0.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_expr("2^3^2")(0.0), 512.0);
  EXPECT_DOUBLE_EQ(parse_expr("8/4/2")(0.0), 1.0);
  EXPECT_DOUBLE_EQ(parse_expr("2^-1")(0.0), 0.5);
  EXPECT_DOUBLE_EQ(parse_expr("1e-3*1000")(0.0), 1.0);
  EXPECT_DOUBLE_EQ(parse_expr("2*e")(0.0), 2 * std::numbers::e);
}

TEST(Expr, UnaryMinusBindsTighterThanPower) {
  EXPECT_DOUBLE_EQ(parse_expr("-2^2")(0.0), 4.0);
  EXPECT_DOUBLE_EQ(parse_expr("-(2^2)")(0.0), -4.0);
  EXPECT_DOUBLE_EQ(parse_expr("3 - -1")(0.0), 4.0);
}

TEST(Expr, VariablesAndFunctions) {
  const auto f = parse_expr("exp(-t)*u^(3/2)*v");
  EXPECT_NEAR(f(0.5, 4.0, 2.0), std::exp(-0.5) * 8.0 * 2.0, 1e-15);
  EXPECT_NEAR(parse_expr("pow(t, 3) + sqrt(u) + abs(v)")(2.0, 9.0, -1.5), 8.0 + 3.0 + 1.5, 1e-15);
  EXPECT_NEAR(parse_expr("sin(pi/2) + cos(0) + log(e)")(0.0), 3.0, 1e-15);
  EXPECT_EQ(f.variables(), (std::set<Var>{Var::T, Var::U, Var::V}));
  EXPECT_TRUE(parse_expr("1/(1+2)").variables().empty());
}

TEST(Expr, TrailingEIsTheConstant) {
  // "2e" is not scientific notation: no digits follow.
  const auto ex = expr_error("2e");
  EXPECT_EQ(ex.code(), Errc::SyntaxError);
  EXPECT_EQ(ex.offset(), 1u);
  EXPECT_NEAR(parse_expr("2*e")(0.0), 2 * std::numbers::e, 1e-15);
}

TEST(Expr, SyntaxErrorsCarryOffsets) {
  {
    const auto e = expr_error("1 + * 2");
    EXPECT_EQ(e.code(), Errc::SyntaxError);
    EXPECT_EQ(e.offset(), 4u);
  }
  {
    const auto e = expr_error("exp(t");
    EXPECT_EQ(e.code(), Errc::SyntaxError);
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_EQ(e.expected(), std::vector<std::string>{")"});
  }
  {
    const auto e = expr_error("2 3");
    EXPECT_EQ(e.code(), Errc::SyntaxError);
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_EQ(expr_error("pow(1)").code(), Errc::SyntaxError);
  EXPECT_EQ(expr_error("").code(), Errc::SyntaxError);
}

TEST(Expr, UnknownIdentifiersAreNamed) {
  const auto e = expr_error("t + w*2");
  EXPECT_EQ(e.code(), Errc::UnknownIdentifier);
  EXPECT_EQ(e.name(), "w");
  EXPECT_EQ(e.offset(), 4u);
  // phi may only use t.
  EXPECT_EQ(expr_error("u/2", {Var::T}).code(), Errc::UnknownIdentifier);
}

TEST(Expr, EvaluationErrors) {
  auto code = [](const char* src, double t, std::optional<double> u = 1.0, std::optional<double> v = 1.0) {
    try {
      parse_expr(src)(t, u, v);
    } catch (const Error& e) {
      return std::optional(e.code());
    }
    return std::optional<Errc>();
  };
  EXPECT_EQ(code("1/t", 0.0), Errc::DomainError);
  EXPECT_EQ(code("sqrt(t)", -1.0), Errc::DomainError);
  EXPECT_EQ(code("log(t)", 0.0), Errc::DomainError);
  EXPECT_EQ(code("t^(1/3)", -8.0), Errc::DomainError);
  EXPECT_EQ(code("t^-1", 0.0), Errc::DomainError);
  EXPECT_EQ(code("u + t", 0.0, std::nullopt), Errc::MissingVariable);
  EXPECT_EQ(code("(-8)^3", 0.0), std::nullopt);
}

TEST(Expr, PrintsWithMinimalParentheses) {
  EXPECT_EQ(parse_expr("(1 + 2) * t").to_string(), "(1 + 2) * t");
  EXPECT_EQ(parse_expr("1 + (2 * t)").to_string(), "1 + 2 * t");
  EXPECT_EQ(parse_expr("t - (u - v)").to_string(), "t - (u - v)");
  EXPECT_EQ(parse_expr("(2^3)^2").to_string(), "(2^3)^2");
}

TEST(Expr, PrintParseRoundTripOnBuiltinForms) {
  for (const char* src : {"exp(-t)*u^(3/2)*v", "-4/(1+t)^4 - (u^4 + u^3)*v", "exp(t) - u/4 + v^2/4",
                          "-2/3*u - exp(-0.5*t)/3*v", "u/2 + exp(3/4*t)*v/2", "720*t + u*v/5 - u^3/5", "t^2",
                          "t*exp(-t)", "1/(1+t)", "-2^2", "2^3^2", "1e-07*t", "(-1)^t"}) {
    const auto e = parse_expr(src);
    const auto again = parse_expr(e.to_string());
    EXPECT_EQ(e, again) << src << " -> " << e.to_string();
  }
}

TEST(Expr, RandomExpressionsRoundTripStructurallyAndNumerically) {
  std::mt19937 gen(2024);
  for (int i = 0; i < 300; ++i) {
    const std::string src = random_source(gen, 4);
    const auto e = parse_expr(src);
    const auto again = parse_expr(e.to_string());
    ASSERT_EQ(e, again) << src << " -> " << e.to_string();
    const double a = e(0.3, 0.7, -0.2);
    const double b = again(0.3, 0.7, -0.2);
    EXPECT_EQ(a, b) << src;
  }
}

TEST(Expr, StructuralEquality) {
  EXPECT_EQ(parse_expr("t+1"), parse_expr(" t + 1 "));
  EXPECT_NE(parse_expr("t+1"), parse_expr("1+t"));
}
