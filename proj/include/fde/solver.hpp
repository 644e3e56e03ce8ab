#pragma once

// Discrete fixed-point iteration on psi = u^(m):
//   U_k = g + L(G, t) Psi_k,  V_k = g(phi(t)) + L(G, phi(t)) Psi_k,
//   Psi_{k+1} = f(t, U_k, V_k).

#include "fde/error.hpp"
#include "fde/grid.hpp"
#include "fde/kernels.hpp"
#include "fde/problem.hpp"
#include "fde/quadrature.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace fde {

struct SolverConfig {
  Level level = Level::P2;
  int n = 8;
  double tol = 1e-14;
  int max_iter = 200;

  void validate() const {
    if (!(tol >= 1e-16)) throw Error(Errc::InvalidConfig, "tol must be at least 1e-16");
    if (max_iter < 1) throw Error(Errc::InvalidConfig, "max_iter must be positive");
    if (n < UniformGrid::kMinIntervals) throw Error(Errc::GridTooSmall, fmt::format("n = {} is below the minimum of 4", n));
  }
};

struct Diagnostics {
  double M0 = 0.0;
  std::optional<double> q;
  std::optional<bool> contraction;
  double first_update = 0.0;  // ||Psi_1 - Psi_0||, stands in for d in the a priori bound
};

struct SolveReport {
  GridFunction U;
  GridFunction Psi;
  int iterations = 0;
  std::vector<double> update_history;
  bool converged = false;  // last update <= tol
  bool stalled = false;    // stopped at the round-off floor above tol
  std::optional<double> max_error;
  Diagnostics diagnostics;

  bool accepted() const { return converged || stalled; }
};

namespace detail {

// Real roots of a polynomial in (lo, hi), bracketed by sign changes on a fine
// sample and polished with TOMS 748.
inline std::vector<double> roots_in(const std::vector<double>& c, double lo, double hi) {
  std::vector<double> out;
  if (!(hi > lo)) return out;
  auto p = [&c](double x) { return horner(c, x); };
  constexpr int kBrackets = 64;
  double x0 = lo;
  double f0 = p(lo);
  for (int i = 1; i <= kBrackets; ++i) {
    const double x1 = lo + (hi - lo) * i / kBrackets;
    const double f1 = p(x1);
    if (f0 == 0.0 && x0 > lo) out.push_back(x0);
    if (f0 * f1 < 0.0) {
      std::uintmax_t iters = 100;
      const auto r = boost::math::tools::toms748_solve(p, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(50), iters);
      out.push_back(0.5 * (r.first + r.second));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

// integral_lo^hi |p(s)| ds, exact between consecutive roots.
inline double abs_integral(const std::vector<double>& c, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> anti(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) anti[i + 1] = c[i] / static_cast<double>(i + 1);
  std::vector<double> cuts{lo};
  for (double r : roots_in(c, lo, hi)) cuts.push_back(r);
  cuts.push_back(hi);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) acc += std::abs(horner(anti, cuts[i + 1]) - horner(anti, cuts[i]));
  return acc;
}

}  // namespace detail

/// integral_0^1 |G(t,s)| ds for the unit-interval pieces.
inline double abs_kernel_integral(const PiecewisePoly2& k, double t) {
  return detail::abs_integral(k.lower.at_t(t), 0.0, t) + detail::abs_integral(k.upper.at_t(t), t, 1.0);
}

/// M0 = max_t integral_0^a |G(t,s)| ds. Exact integration per t on a sample of
/// `resolution` + 1 points, then a Brent refinement around the best sample.
inline double estimate_M0(const PiecewisePoly2& kernel, int resolution = 256) {
  if (resolution < 64) throw Error(Errc::InvalidConfig, "M0 resolution must be at least 64");
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= resolution; ++i) {
    const double v = abs_kernel_integral(kernel, static_cast<double>(i) / resolution);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, static_cast<double>(best - 1) / resolution);
  const double hi = std::min(1.0, static_cast<double>(best + 1) / resolution);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima([&kernel](double t) { return -abs_kernel_integral(kernel, t); }, lo,
                                                       hi, 52, iters);
  const double unit = std::max(best_value, -r.second);
  // On [0,a]: a^(m-1) from the kernel, one more a from ds.
  return unit * std::pow(kernel.interval_length, kernel.homogeneity + 1);
}

inline double estimate_M0(const GreenKernel& kernel, int resolution = 256) { return estimate_M0(kernel.pieces(), resolution); }

struct ContractionCheck {
  double q;
  bool satisfied;
};

/// q = (L1 + L2) M0; advisory only.
inline ContractionCheck contraction_check(const BvpProblem& problem, const GreenKernel& kernel) {
  if (!problem.lipschitz) throw Error(Errc::MissingLipschitz, "problem '" + problem.name + "' carries no Lipschitz constants");
  const double q = (problem.lipschitz->first + problem.lipschitz->second) * estimate_M0(kernel);
  return {q, q < 1.0};
}

/// The discrete map Psi -> f(t, U[Psi], V[Psi]) with rows assembled once.
class FixedPointMap {
 public:
  FixedPointMap(const BvpProblem& problem, Level level, int n)
      : problem_(problem),
        grid_(n, problem.interval_length),
        kernel_(build_green_kernel(problem.order, problem.bc.tag, problem.interval_length)),
        g_(build_boundary_poly(problem.order, problem.bc, problem.interval_length)),
        t_(grid_.nodes()),
        xi_(deviated_points(problem_, t_, grid_.length())),
        u_op_(kernel_, grid_, level, t_),
        v_op_(kernel_, grid_, level, xi_) {
    g_t_.resize(t_.size());
    g_xi_.resize(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) {
      g_t_[i] = g_(t_[i]);
      g_xi_[i] = g_(xi_[i]);
    }
  }

  const UniformGrid& grid() const { return grid_; }
  const GreenKernel& kernel() const { return kernel_; }
  const std::vector<double>& nodes() const { return t_; }

  std::vector<double> initial() const {
    std::vector<double> psi(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) psi[i] = evaluate_rhs(i, 0.0, 0.0);
    return psi;
  }

  /// U = g + A psi
  void reconstruct(const std::vector<double>& psi, std::vector<double>& u) const {
    u_op_.apply(psi, u);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += g_t_[i];
  }

  void apply(const std::vector<double>& psi, std::vector<double>& next) const {
    reconstruct(psi, scratch_u_);
    v_op_.apply(psi, scratch_v_);
    next.resize(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) next[i] = evaluate_rhs(i, scratch_u_[i], scratch_v_[i] + g_xi_[i]);
  }

 private:
  // phi(t_i), with round-off just outside [0,a] pulled back in.
  static std::vector<double> deviated_points(const BvpProblem& p, const std::vector<double>& t, double a) {
    std::vector<double> xi(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) xi[i] = std::clamp(p.phi(t[i]), 0.0, a);
    return xi;
  }

  double evaluate_rhs(std::size_t i, double u, double v) const {
    double out;
    try {
      out = problem_.rhs(t_[i], u, v);
    } catch (const Error& e) {
      throw Error(Errc::NonFiniteIterate, fmt::format("f undefined at node {} (t = {:.6g}): {}", i, t_[i], e.what()));
    }
    if (!std::isfinite(out))
      throw Error(Errc::NonFiniteIterate, fmt::format("f = {} at node {} (t = {:.6g}, u = {:.6g}, v = {:.6g})", out, i, t_[i], u, v));
    return out;
  }

  BvpProblem problem_;
  UniformGrid grid_;
  GreenKernel kernel_;
  BoundaryPoly g_;
  std::vector<double> t_;
  std::vector<double> xi_;
  QuadratureOperator u_op_;
  QuadratureOperator v_op_;
  std::vector<double> g_t_;
  std::vector<double> g_xi_;
  mutable std::vector<double> scratch_u_;
  mutable std::vector<double> scratch_v_;
};

inline constexpr double kStallFloor = 1e-13;

/// Three updates in a row that fail to decrease, all below the floor.
inline bool is_stalled(const std::vector<double>& history) {
  const std::size_t k = history.size();
  if (k < 3) return false;
  const double a = history[k - 3];
  const double b = history[k - 2];
  const double c = history[k - 1];
  return a < kStallFloor && b < kStallFloor && c < kStallFloor && b >= a && c >= b;
}

inline double sup_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

inline SolveReport solve(const BvpProblem& problem, const SolverConfig& config) {
  config.validate();
  const FixedPointMap map(problem, config.level, config.n);
  std::vector<double> psi = map.initial();
  std::vector<double> next;
  std::vector<double> history;
  bool converged = false;
  bool stalled = false;
  for (int k = 0; k < config.max_iter; ++k) {
    map.apply(psi, next);
    const double d = sup_distance(next, psi);
    history.push_back(d);
    psi.swap(next);
    if (d <= config.tol) {
      converged = true;
      break;
    }
    if (is_stalled(history)) {
      stalled = true;
      break;
    }
  }
  if (!converged && !stalled) {
    const std::size_t k = history.size();
    std::string tail;
    for (std::size_t i = k >= 3 ? k - 3 : 0; i < k; ++i) tail += fmt::format(" {:.3e}", history[i]);
    throw Error(Errc::NoConvergence, fmt::format("no convergence after {} iterations; last updates:{}", k, tail));
  }
  std::vector<double> u;
  map.reconstruct(psi, u);

  SolveReport report{GridFunction(map.grid(), u), GridFunction(map.grid(), psi), static_cast<int>(history.size()),
                     history, converged, stalled, std::nullopt, {}};
  if (problem.exact) {
    double err = 0.0;
    const auto& t = map.nodes();
    for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(u[i] - (*problem.exact)(t[i])));
    report.max_error = err;
  }
  report.diagnostics.M0 = estimate_M0(map.kernel());
  report.diagnostics.first_update = history.front();
  if (problem.lipschitz) {
    const double q = (problem.lipschitz->first + problem.lipschitz->second) * report.diagnostics.M0;
    report.diagnostics.q = q;
    report.diagnostics.contraction = q < 1.0;
  }
  return report;
}

/// sup |F(Psi) - Psi| of the discrete map at a given iterate.
inline double fixed_point_residual(const BvpProblem& problem, const SolverConfig& config, const std::vector<double>& psi) {
  const FixedPointMap map(problem, config.level, config.n);
  std::vector<double> next;
  map.apply(psi, next);
  return sup_distance(next, psi);
}

}  // namespace fde
