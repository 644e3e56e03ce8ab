#pragma once

// Corrected trapezoid rules for integral_0^a G(x,s) psi(s) ds. Level Pp adds
// the first p-1 Euler-Maclaurin terms; the kernel side of each term is exact,
// the psi side comes from finite differences.

#include "fde/error.hpp"
#include "fde/findiff.hpp"
#include "fde/grid.hpp"
#include "fde/kernels.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fde {

enum class Level { Plain, P2, P3, P4 };

constexpr int correction_terms(Level level) {
  switch (level) {
    case Level::Plain: return 0;
    case Level::P2: return 1;
    case Level::P3: return 2;
    case Level::P4: return 3;
  }
  return 0;
}

/// Nominal convergence order h^(2p).
constexpr int nominal_order(Level level) { return 2 * (correction_terms(level) + 1); }

constexpr std::string_view to_string(Level level) {
  switch (level) {
    case Level::Plain: return "plain";
    case Level::P2: return "p4";
    case Level::P3: return "p6";
    case Level::P4: return "p8";
  }
  return "?";
}

/// Method names follow the accuracy order: p4, p6, p8 (plain = p2).
inline Level parse_level(std::string_view name) {
  if (name == "p2" || name == "plain") return Level::Plain;
  if (name == "p4") return Level::P2;
  if (name == "p6") return Level::P3;
  if (name == "p8") return Level::P4;
  throw Error(Errc::InvalidConfig, "unknown method '" + std::string(name) + "' (expected p4, p6 or p8)");
}

// B_{2l}/(2l)! for l = 1, 2, 3.
inline constexpr std::array<double, 4> kBernoulliFactor = {0.0, 1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0};

/// Accuracy of the psi-derivative approximations in correction term l at
/// level p: h^(2l) * h^(2(p-l)) = h^(2p).
constexpr int derivative_accuracy(Level level, int l) { return 2 * (correction_terms(level) + 1 - l); }

namespace detail {

inline double checked_point(const UniformGrid& grid, double x) {
  const double a = grid.length();
  // Tolerate round-off from phi evaluation right at the ends.
  if (x < 0.0 && x > -1e-14 * a) return 0.0;
  if (x > a && x < a * (1.0 + 1e-14)) return a;
  if (!(x >= 0.0 && x <= a)) throw Error(Errc::OutOfDomain, "evaluation point outside [0,a]");
  return x;
}

inline void accumulate(std::vector<double>& row, const NodeWeights& w, double factor) {
  for (std::size_t q = 0; q < w.weights.size(); ++q)
    row[static_cast<std::size_t>(w.first) + q] += factor * w.weights[q];
}

}  // namespace detail

inline std::vector<double> trapezoid_row(const GreenKernel& kernel, const UniformGrid& grid, double x) {
  x = detail::checked_point(grid, x);
  const int n = grid.intervals();
  const double h = grid.step();
  std::vector<double> row(grid.size(), 0.0);
  for (int j = 0; j <= n; ++j) {
    const double rho = (j == 0 || j == n) ? 0.5 : 1.0;
    row[static_cast<std::size_t>(j)] = h * rho * kernel.value_unchecked(x, grid.node(j));
  }
  return row;
}

/// Coefficients of the linear functional psi -> L(G, x) psi over grid values.
inline std::vector<double> operator_row(const GreenKernel& kernel, const UniformGrid& grid, Level level, double x) {
  x = detail::checked_point(grid, x);
  if (std::abs(kernel.interval_length() - grid.length()) > 1e-15 * grid.length())
    throw Error(Errc::BadInterval, "kernel and grid live on different intervals");
  if (x == 0.0 && kernel.vanishes_at_origin()) return std::vector<double>(grid.size(), 0.0);

  std::vector<double> row = trapezoid_row(kernel, grid, x);
  const double h = grid.step();
  const double a = grid.length();
  const int p = correction_terms(level);
  for (int l = 1; l <= p; ++l) {
    const int r = 2 * l - 1;
    const double c = kBernoulliFactor[static_cast<std::size_t>(l)] * std::pow(h, 2 * l);
    const int acc = derivative_accuracy(level, l);
    // Leibniz: (G psi)^(r) = sum_k C(r,k) G^(k) psi^(r-k).
    for (int k = 0; k <= r; ++k) {
      const int j = r - k;
      const double binom = boost::math::binomial_coefficient<double>(static_cast<unsigned>(r), static_cast<unsigned>(k));
      const double right = kernel.right_factor_vanishes(k) ? 0.0 : kernel.right_factor(k, x);
      const double left = kernel.left_factor_vanishes(k) ? 0.0 : kernel.left_factor(k, x);
      const double jump = kernel.jump_vanishes(k) ? 0.0 : kernel.jump_factor(k, x);
      if (right != 0.0) detail::accumulate(row, derivative_weights(grid, a, j, acc), -c * binom * right);
      if (left != 0.0) detail::accumulate(row, derivative_weights(grid, 0.0, j, acc), c * binom * left);
      if (jump != 0.0) detail::accumulate(row, derivative_weights(grid, x, j, acc), c * binom * jump);
    }
  }
  return row;
}

inline double dot(const std::vector<double>& row, const GridFunction& psi) {
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * psi.values[j];
  return acc;
}

inline double trapezoid(const GreenKernel& kernel, const UniformGrid& grid, double x, const GridFunction& psi) {
  return dot(trapezoid_row(kernel, grid, x), psi);
}

inline double corrected_integral(const GreenKernel& kernel, const UniformGrid& grid, Level level, double x,
                                 const GridFunction& psi) {
  return dot(operator_row(kernel, grid, level, x), psi);
}

/// Assembled rows for a fixed set of evaluation points.
class QuadratureOperator {
 public:
  QuadratureOperator(const GreenKernel& kernel, UniformGrid grid, Level level, const std::vector<double>& points)
      : grid_(grid), level_(level), points_(points) {
    rows_.reserve(points.size());
    for (double x : points) rows_.push_back(operator_row(kernel, grid, level, x));
  }

  const UniformGrid& grid() const { return grid_; }
  Level level() const { return level_; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& row(std::size_t i) const { return rows_[i]; }
  std::size_t size() const { return rows_.size(); }

  /// out[i] = row_i . psi
  void apply(const std::vector<double>& psi, std::vector<double>& out) const {
    out.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& w = rows_[i];
      double acc = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * psi[j];
      out[i] = acc;
    }
  }

 private:
  UniformGrid grid_;
  Level level_;
  std::vector<double> points_;
  std::vector<std::vector<double>> rows_;
};

/// Trapezoid sum where a node that coincides with a jump of the integrand uses
/// the mean of the one-sided limits. The integrand is given by its one-sided
/// values; `jump` is the location of the discontinuity.
inline double jump_averaged_trapezoid(const std::function<double(double, Side)>& integrand, const UniformGrid& grid,
                                      double jump) {
  const int n = grid.intervals();
  const double h = grid.step();
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double s = grid.node(j);
    const double rho = (j == 0 || j == n) ? 0.5 : 1.0;
    const bool on_jump = std::abs(s - jump) <= 1e-12 * grid.length();
    const double v = on_jump ? 0.5 * (integrand(s, Side::Lower) + integrand(s, Side::Upper))
                             : integrand(s, s <= jump ? Side::Lower : Side::Upper);
    acc += h * rho * v;
  }
  return acc;
}

}  // namespace fde
