#pragma once

// Oracles shared by the unit tests and the acceptance runner.

#include "fde/fde.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace fde::testing {

// integral_l^r p(s) e^(c s) ds, exact: e^(cs) sum_k (-1)^k p^(k)(s) / c^(k+1).
inline double poly_exp_integral(std::vector<double> p, double c, double l, double r) {
  auto primitive = [&](double s) {
    double acc = 0.0;
    std::vector<double> d = p;
    double sign = 1.0;
    double cp = c;
    while (!d.empty()) {
      acc += sign * horner(d, s) / cp;
      std::vector<double> nd;
      for (std::size_t i = 1; i < d.size(); ++i) nd.push_back(d[i] * static_cast<double>(i));
      d = std::move(nd);
      sign = -sign;
      cp *= c;
    }
    return std::exp(c * s) * acc;
  };
  return primitive(r) - primitive(l);
}

/// integral_0^a G(x,s) e^(c s) ds computed piecewise in closed form.
inline double kernel_exp_integral(const GreenKernel& k, double x, double c = 1.0) {
  const double a = k.interval_length();
  const auto& pieces = k.pieces();
  // Substitute s = a*sigma: integral = a^(e+1) integral_0^1 G1(x/a, sigma) e^(c a sigma) dsigma.
  const double xs = x / a;
  const double scale = std::pow(a, pieces.homogeneity + 1);
  return scale * (poly_exp_integral(pieces.lower.at_t(xs), c * a, 0.0, xs) +
                  poly_exp_integral(pieces.upper.at_t(xs), c * a, xs, 1.0));
}

/// Third-order kernel on [0,a], level P3, written out term by term:
///   T - h^2/12 {G_s(x,a) psi_n - G_s(x,0) psi_0}
///     + h^4/720 {3x^2/(2a) D2 psi_n - 3 D1 psi_0 - 3(x^2/(2a) - x) D2 psi_0 + 3 psi'(x)}
/// with psi'(x) = D1 psi_m + D2 psi_m (x - t_m), m the node left of x (clamped to 1..n-1).
inline double third_a_p3_by_hand(const GreenKernel& k, const GridFunction& psi, double x) {
  const auto& grid = psi.grid;
  const int n = grid.intervals();
  const double h = grid.step();
  const double a = grid.length();
  if (x == 0.0) return 0.0;
  double T = 0.0;
  for (int j = 0; j <= n; ++j) T += h * ((j == 0 || j == n) ? 0.5 : 1.0) * k(x, grid.node(j));
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) sum += h * ((j == 0 || j == n) ? 0.5 : 1.0) * k(x, grid.node(j)) * psi.values[static_cast<std::size_t>(j)];
  const double G1a = k.s_derivative(1, x, a, Side::Upper);
  const double G10 = k.s_derivative(1, x, 0.0, Side::Lower);
  const auto& v = psi.values;
  auto at = [&v](int i) { return v[static_cast<std::size_t>(i)]; };
  const double D1_0 = (-3 * at(0) + 4 * at(1) - at(2)) / (2 * h);
  const double D2_0 = (2 * at(0) - 5 * at(1) + 4 * at(2) - at(3)) / (h * h);
  const double D2_n = (2 * at(n) - 5 * at(n - 1) + 4 * at(n - 2) - at(n - 3)) / (h * h);
  double dpsi;
  const double r = x / h;
  if (std::abs(r - std::round(r)) <= 1e-9) {
    const int i = static_cast<int>(std::round(r));
    if (i == n)
      dpsi = (3 * at(n) - 4 * at(n - 1) + at(n - 2)) / (2 * h);
    else
      dpsi = (at(i + 1) - at(i - 1)) / (2 * h);
  } else {
    const int m = std::clamp(static_cast<int>(std::floor(r)), 1, n - 1);
    const double D1 = (at(m + 1) - at(m - 1)) / (2 * h);
    const double D2 = (at(m + 1) - 2 * at(m) + at(m - 1)) / (h * h);
    dpsi = D1 + D2 * (x - grid.node(m));
  }
  (void)T;
  return sum - h * h / 12 * (G1a * at(n) - G10 * at(0)) +
         std::pow(h, 4) / 720 * (3 * x * x / (2 * a) * D2_n - 3 * D1_0 - 3 * (x * x / (2 * a) - x) * D2_0 + 3 * dpsi);
}

/// Observed rate log2(e1/e2) per halving from a list of errors on n, 2n, 4n, ...
inline std::vector<double> rates(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(std::log2(errors[i - 1] / errors[i]));
  return out;
}

/// Sup error of L(G, x) exp(c s) against the closed form, over a set of points.
inline double quadrature_error(const GreenKernel& k, Level level, int n, const std::vector<double>& xs, double c = 1.0) {
  const UniformGrid grid(n, k.interval_length());
  const auto psi = GridFunction::sample(grid, [c](double s) { return std::exp(c * s); });
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(corrected_integral(k, grid, level, x, psi) - kernel_exp_integral(k, x, c)));
  return worst;
}

inline std::vector<double> random_values(std::size_t count, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(count);
  for (auto& x : v) x = dist(gen);
  return v;
}

}  // namespace fde::testing
