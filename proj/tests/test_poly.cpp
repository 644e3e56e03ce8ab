#include "fde/poly.hpp"

#include <gtest/gtest.h>

using fde::Poly1;
using fde::Poly2;
using fde::Rational;

TEST(Poly1, DerivativeAndAntiderivativeAreInverse) {
  const Poly1 p({Rational(3), Rational(-1, 2), Rational(0), Rational(5, 7)});
  EXPECT_EQ(p.antiderivative().derivative(), p);
  EXPECT_EQ(p.derivative(4), Poly1());
  EXPECT_EQ(p.derivative().coeff(2), Rational(15, 7));
}

TEST(Poly1, ExactAndFloatingEvaluationAgree) {
  const Poly1 p({Rational(1, 3), Rational(2), Rational(-7, 5)});
  EXPECT_EQ(p(Rational(1, 2)), Rational(1, 3) + 1 - Rational(7, 20));
  EXPECT_NEAR(p.eval(0.5), fde::to_double(p(Rational(1, 2))), 1e-15);
}

TEST(Poly1, TrimsTrailingZeros) {
  const Poly1 p({Rational(1), Rational(0), Rational(0)});
  EXPECT_EQ(p.degree(), 0);
  EXPECT_TRUE(Poly1({Rational(0)}).is_zero());
}

TEST(Poly2, PartialDerivativesMatchFiniteDifferences) {
  const Poly2 t = Poly2::t();
  const Poly2 s = Poly2::s();
  const Poly2 p = t * t * s - 3 * s * s * s + t / 2;
  const double h = 1e-6;
  for (double tv : {0.1, 0.4, 0.9})
    for (double sv : {0.2, 0.7}) {
      EXPECT_NEAR(p.derivative_s().eval(tv, sv), (p.eval(tv, sv + h) - p.eval(tv, sv - h)) / (2 * h), 1e-8);
      EXPECT_NEAR(p.derivative_t().eval(tv, sv), (p.eval(tv + h, sv) - p.eval(tv - h, sv)) / (2 * h), 1e-8);
    }
}

TEST(Poly2, RestrictionsAndDiagonal) {
  const Poly2 t = Poly2::t();
  const Poly2 s = Poly2::s();
  const Poly2 p = t * s + s * s;
  EXPECT_EQ(p.at_s(Rational(2)), Poly1({Rational(4), Rational(2)}));
  EXPECT_EQ(p.at_t(Rational(3)), Poly1({Rational(0), Rational(3), Rational(1)}));
  EXPECT_EQ(p.on_diagonal(), Poly1({Rational(0), Rational(0), Rational(2)}));
  EXPECT_EQ(p.transposed().eval(1.0, 2.0), p.eval(2.0, 1.0));
}

TEST(Poly2, DenseEvaluationMatchesExact) {
  const Poly2 t = Poly2::t();
  const Poly2 s = Poly2::s();
  const Poly2 p = fde::pow(t - s, 3) * (t * s + 1) / 7;
  const fde::DensePoly2 dense(p);
  for (double tv : {0.0, 0.25, 0.8, 1.0})
    for (double sv : {0.0, 0.5, 1.0}) EXPECT_NEAR(dense(tv, sv), p.eval(tv, sv), 1e-15);
}

TEST(Poly2, AtTDoubleGivesCoefficientsInS) {
  const Poly2 t = Poly2::t();
  const Poly2 s = Poly2::s();
  const Poly2 p = t * s * s + 2 * t;
  const auto c = p.at_t(0.5);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
  EXPECT_DOUBLE_EQ(c[2], 0.5);
}
