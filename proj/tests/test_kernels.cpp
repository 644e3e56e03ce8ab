#include "fde/kernels.hpp"
#include "fde/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>

using namespace fde;

namespace {

std::optional<Errc> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

class EveryFamily : public ::testing::TestWithParam<BcTag> {};

}  // namespace

TEST(ThirdA, ValuesAndHomogeneousConditions) {
  const auto G = build_green_kernel(3, BcTag::ThirdA);
  EXPECT_NEAR(G(0.5, 0.25), -0.0625, 1e-15);
  for (double t : {0.1, 0.5, 0.9}) {
    EXPECT_EQ(G(t, 0.0), 0.0);
    EXPECT_NEAR(G(t, 1.0), 0.0, 1e-16);
  }
}

TEST(ThirdA, IntegralAgainstOneIsExact) {
  const auto G = build_green_kernel(3, BcTag::ThirdA);
  const Poly1 u = integrate_against(G.pieces(), Poly1::constant(1));
  EXPECT_EQ(u, Poly1({Rational(0), Rational(0), Rational(-1, 4), Rational(1, 6)}));
}

TEST(ThirdA, SDerivativesAndDiagonalJump) {
  const auto G = build_green_kernel(3, BcTag::ThirdA);
  EXPECT_NEAR(G.s_derivative(1, 0.5, 0.2, Side::Lower), -0.175, 1e-15);
  EXPECT_NEAR(G.s_derivative(1, 0.5, 0.8, Side::Upper), 0.125, 1e-15);
  EXPECT_NEAR(G.s_derivative(2, 0.5, 0.5, Side::Lower), 1.0, 1e-15);
  EXPECT_NEAR(G.s_derivative(2, 0.5, 0.5, Side::Upper), 0.0, 1e-15);
  // First derivative is continuous across the diagonal, the second jumps by -1.
  EXPECT_TRUE(G.jump_vanishes(0));
  EXPECT_TRUE(G.jump_vanishes(1));
  EXPECT_DOUBLE_EQ(G.jump_factor(2, 0.3), -1.0);
}

TEST(ThirdA, ScalesToLongerIntervals) {
  const double a = 2.0;
  const auto G = build_green_kernel(3, BcTag::ThirdA, a);
  auto direct = [a](double t, double s) { return s <= t ? s / 2 * (t * t / a - 2 * t + s) : t * t / 2 * (s / a - 1); };
  for (double t : {0.3, 1.1, 1.9})
    for (double s : {0.0, 0.7, 1.5, 2.0}) EXPECT_NEAR(G(t, s), direct(t, s), 1e-14);
  EXPECT_NEAR(G.s_derivative(1, 1.0, 1.5, Side::Upper), 1.0 / (2 * a), 1e-15);
}

TEST(FourthClamped, IsSymmetricAndClamped) {
  const auto G = build_green_kernel(4, BcTag::FourthClamped);
  for (double t : {0.1, 0.3, 0.6, 0.95})
    for (double s : {0.05, 0.4, 0.7}) EXPECT_NEAR(G(t, s), G(s, t), 1e-16);
  for (double t : {0.2, 0.8}) {
    EXPECT_NEAR(G.s_derivative(1, t, 0.0, Side::Lower), 0.0, 1e-16);
    EXPECT_NEAR(G.s_derivative(1, t, 1.0, Side::Upper), 0.0, 1e-16);
  }
}

TEST(ThirdB, KernelVanishesOnTheLeftEdge) {
  const auto G = build_green_kernel(3, BcTag::ThirdB);
  for (double t : {0.0, 0.3, 1.0}) EXPECT_NEAR(G(t, 0.0), 0.0, 1e-16);
}

TEST(ThirdB, LowerPieceWithoutFactorSFailsTheOracle) {
  // Without the factor s the lower piece no longer solves the defining problem.
  const Poly2 t = Poly2::t();
  const Poly2 s = Poly2::s();
  PiecewisePoly2 pieces{-((1 - t) * (2 * t - t * s - s)) / 2, -(t * t * pow(1 - s, 2)) / 2, 1.0, 2};
  const GreenKernel wrong(3, BcTag::ThirdB, pieces);
  const auto check = check_kernel(wrong, default_kernel_probes());
  EXPECT_FALSE(check.ok());
}

TEST_P(EveryFamily, PassesTheResidualOracle) {
  const BcTag tag = GetParam();
  const auto G = build_green_kernel(equation_order(tag), tag);
  const auto check = check_kernel(G, default_kernel_probes(20));
  EXPECT_LE(check.continuity_gap, 1e-13);
  EXPECT_TRUE(check.residual_exact);
  EXPECT_TRUE(check.boundary_exact);
  EXPECT_EQ(check.probes, 20);
}

TEST_P(EveryFamily, LowerOrderDerivativesAreContinuousAndTopOneJumpsByUnit) {
  const BcTag tag = GetParam();
  const int m = equation_order(tag);
  const auto G = build_green_kernel(m, tag);
  for (int k = 0; k <= m - 2; ++k) EXPECT_TRUE(G.jump_vanishes(k)) << "k = " << k;
  // Upper minus lower of d^(m-1)G/ds^(m-1) on the diagonal is (-1)^m.
  const double expected = m % 2 ? -1.0 : 1.0;
  for (double t : {0.0, 0.37, 1.0}) EXPECT_NEAR(G.jump_factor(m - 1, t), expected, 1e-14);
}

TEST_P(EveryFamily, CachedDerivativesMatchRepeatedDifferentiation) {
  const BcTag tag = GetParam();
  const auto G = build_green_kernel(equation_order(tag), tag);
  Poly2 lower = G.pieces().lower;
  Poly2 upper = G.pieces().upper;
  for (int k = 0; k <= GreenKernel::kMaxDerivative; ++k) {
    EXPECT_EQ(G.lower_derivative(k), lower);
    EXPECT_EQ(G.upper_derivative(k), upper);
    lower = lower.derivative_s();
    upper = upper.derivative_s();
  }
}

TEST_P(EveryFamily, BoundaryPolynomialMeetsRandomData) {
  const BcTag tag = GetParam();
  const int m = equation_order(tag);
  const std::vector<double> values = {0.7, -1.3, 2.1, 0.4, -0.9};
  const BcFamily bc(tag, std::vector<double>(values.begin(), values.begin() + condition_count(tag)));
  const auto g = build_boundary_poly(m, bc);
  const auto fs = functionals(tag);
  for (std::size_t i = 0; i < fs.size(); ++i)
    EXPECT_NEAR(g.derivative(fs[i].at_right ? 1.0 : 0.0, fs[i].derivative), bc.values[i], 1e-13);
  EXPECT_EQ(g.derivative(0.4, m), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Kernels, EveryFamily, ::testing::ValuesIn(kAllFamilies),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(BoundaryPoly, ThirdAWithExponentialData) {
  const auto g = build_boundary_poly(3, BcFamily(BcTag::ThirdA, {1.0, 1.0, std::exp(1.0)}));
  ASSERT_GE(g.coeffs().size(), 3u);
  EXPECT_NEAR(g.coeffs()[0], 1.0, 1e-15);
  EXPECT_NEAR(g.coeffs()[1], 1.0, 1e-15);
  EXPECT_NEAR(g.coeffs()[2], (std::exp(1.0) - 1.0) / 2.0, 1e-15);
}

TEST(BoundaryPoly, ZeroDataGivesZero) {
  const auto g = build_boundary_poly(4, BcFamily(BcTag::FourthClamped, {0, 0, 0, 0}));
  for (double t : {0.0, 0.5, 1.0}) EXPECT_EQ(g(t), 0.0);
}

TEST(BoundaryPoly, FifthOrderReproducesSextic) {
  // t^6 has u(0)=u'(0)=u''(0)=0, u(1)=1, u'(1)=6.
  const auto g = build_boundary_poly(5, BcFamily(BcTag::Fifth, {0, 0, 0, 1, 6}));
  EXPECT_NEAR(g(0.0), 0.0, 1e-15);
  EXPECT_NEAR(g.derivative(0.0, 1), 0.0, 1e-15);
  EXPECT_NEAR(g.derivative(0.0, 2), 0.0, 1e-15);
  EXPECT_NEAR(g(1.0), 1.0, 1e-14);
  EXPECT_NEAR(g.derivative(1.0, 1), 6.0, 1e-14);
}

TEST(Kernels, RejectsUnsupportedRequests) {
  EXPECT_EQ(code_of([] { build_green_kernel(3, BcTag::FourthClamped); }), Errc::UnsupportedFamily);
  EXPECT_EQ(code_of([] { parse_bc_tag("sixth"); }), Errc::UnsupportedFamily);
  EXPECT_EQ(code_of([] { build_green_kernel(3, BcTag::ThirdA, 0.0); }), Errc::BadInterval);
  EXPECT_EQ(code_of([] { build_green_kernel(3, BcTag::ThirdA, -1.0); }), Errc::BadInterval);
  EXPECT_EQ(code_of([] { build_green_kernel(3, BcTag::ThirdB, 2.0); }), Errc::BadInterval);
  const auto G = build_green_kernel(3, BcTag::ThirdA);
  EXPECT_EQ(code_of([&] { G(1.5, 0.2); }), Errc::OutOfDomain);
  EXPECT_EQ(code_of([&] { G.s_derivative(1, 0.5, -0.1, Side::Lower); }), Errc::OutOfDomain);
  EXPECT_EQ(code_of([&] { G.s_derivative(8, 0.5, 0.2, Side::Lower); }), Errc::DerivativeOrderTooHigh);
  EXPECT_EQ(code_of([] { BcFamily(BcTag::ThirdA, {1.0, 2.0}); }), Errc::UnsupportedFamily);
}

TEST(Kernels, NamesRoundTrip) {
  for (BcTag tag : kAllFamilies) EXPECT_EQ(parse_bc_tag(to_string(tag)), tag);
}

// M0 by brute force: Simpson in s on 10^4 panels, golden-section in t.
namespace {

double simpson_abs(const GreenKernel& G, double t, int panels) {
  const double h = 1.0 / panels;
  double acc = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * std::abs(G(t, i * h));
  }
  return acc * h / 3;
}

double brute_M0(const GreenKernel& G) {
  constexpr int kPanels = 10000;
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double v = simpson_abs(G, i / 200.0, kPanels);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1) / 200.0), hi = std::min(1.0, (best + 1) / 200.0);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 40; ++it) {
    const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    if (simpson_abs(G, x1, kPanels) < simpson_abs(G, x2, kPanels))
      lo = x1;
    else
      hi = x2;
  }
  return std::max(best_v, simpson_abs(G, 0.5 * (lo + hi), kPanels));
}

}  // namespace

TEST_P(EveryFamily, M0AgreesWithBruteForce) {
  const BcTag tag = GetParam();
  const auto G = build_green_kernel(equation_order(tag), tag);
  EXPECT_NEAR(estimate_M0(G), brute_M0(G), 1e-8);
}

TEST_P(EveryFamily, M0IsStableUnderResolutionDoubling) {
  const BcTag tag = GetParam();
  const auto G = build_green_kernel(equation_order(tag), tag);
  EXPECT_NEAR(estimate_M0(G, 256), estimate_M0(G, 512), 1e-10);
}

TEST(M0, KnownValues) {
  EXPECT_NEAR(estimate_M0(build_green_kernel(3, BcTag::ThirdA)), 1.0 / 12.0, 1e-12);
  // Scaling on [0,a] goes as a^m.
  EXPECT_NEAR(estimate_M0(build_green_kernel(3, BcTag::ThirdA, 2.0)), 8.0 / 12.0, 1e-11);
  EXPECT_NEAR(estimate_M0(build_green_kernel(4, BcTag::FourthClamped)), 1.0 / 384.0, 1e-12);
  EXPECT_EQ(code_of([] { estimate_M0(build_green_kernel(3, BcTag::ThirdA), 10); }), Errc::InvalidConfig);
}
