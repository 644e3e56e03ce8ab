#pragma once

// Green kernels and boundary polynomials for the five supported two-point
// boundary-condition families of u^(m) = psi, m in {3, 4, 5}.

#include "fde/error.hpp"
#include "fde/poly.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fde {

enum class BcTag { ThirdA, ThirdB, ThirdC, FourthClamped, Fifth };

/// A boundary functional u^(derivative)(0) or u^(derivative)(a).
struct BoundaryFunctional {
  bool at_right;
  int derivative;
};

inline constexpr std::array<BcTag, 5> kAllFamilies = {BcTag::ThirdA, BcTag::ThirdB, BcTag::ThirdC,
                                                      BcTag::FourthClamped, BcTag::Fifth};

constexpr std::string_view to_string(BcTag tag) {
  switch (tag) {
    case BcTag::ThirdA: return "third_a";
    case BcTag::ThirdB: return "third_b";
    case BcTag::ThirdC: return "third_c";
    case BcTag::FourthClamped: return "fourth_clamped";
    case BcTag::Fifth: return "fifth";
  }
  return "?";
}

inline BcTag parse_bc_tag(std::string_view name) {
  for (BcTag tag : kAllFamilies)
    if (to_string(tag) == name) return tag;
  throw Error(Errc::UnsupportedFamily, "unknown boundary-condition family '" + std::string(name) + "'");
}

constexpr int equation_order(BcTag tag) {
  switch (tag) {
    case BcTag::ThirdA:
    case BcTag::ThirdB:
    case BcTag::ThirdC: return 3;
    case BcTag::FourthClamped: return 4;
    case BcTag::Fifth: return 5;
  }
  return 0;
}

/// Boundary functionals of a family, in the order its values are listed.
inline std::vector<BoundaryFunctional> functionals(BcTag tag) {
  switch (tag) {
    case BcTag::ThirdA: return {{false, 0}, {false, 1}, {true, 1}};
    case BcTag::ThirdB: return {{false, 0}, {false, 1}, {true, 0}};
    case BcTag::ThirdC: return {{false, 0}, {true, 0}, {true, 1}};
    case BcTag::FourthClamped: return {{false, 0}, {true, 0}, {false, 1}, {true, 1}};
    case BcTag::Fifth: return {{false, 0}, {false, 1}, {false, 2}, {true, 0}, {true, 1}};
  }
  return {};
}

inline int condition_count(BcTag tag) { return static_cast<int>(functionals(tag).size()); }

/// Boundary-condition family together with its prescribed values c1, c2, ...
struct BcFamily {
  BcTag tag;
  std::vector<double> values;

  BcFamily(BcTag tag_, std::vector<double> values_) : tag(tag_), values(std::move(values_)) {
    if (static_cast<int>(values.size()) != condition_count(tag))
      throw Error(Errc::UnsupportedFamily, std::string(to_string(tag)) + " expects " +
                                               std::to_string(condition_count(tag)) + " boundary values, got " +
                                               std::to_string(values.size()));
  }
};

/// Two polynomial pieces split on the diagonal: `lower` for s <= t, `upper`
/// for s >= t. Pieces are stored on the unit square; a kernel on [0,a] of
/// homogeneity e evaluates as a^e * piece(t/a, s/a).
struct PiecewisePoly2 {
  Poly2 lower;
  Poly2 upper;
  double interval_length = 1.0;
  int homogeneity = 0;

  double operator()(double t, double s) const {
    const double a = interval_length;
    if (!(t >= 0.0 && t <= a && s >= 0.0 && s <= a))
      throw Error(Errc::OutOfDomain, "kernel evaluated outside [0,a]^2");
    const double v = s <= t ? lower.eval(t / a, s / a) : upper.eval(t / a, s / a);
    return a == 1.0 ? v : std::pow(a, homogeneity) * v;
  }
};

enum class Side { Lower, Upper };

/// Exact piecewise-polynomial Green kernel with cached s-derivatives and the
/// derived endpoint and diagonal-jump factors used by the quadrature corrections.
class GreenKernel {
 public:
  static constexpr int kMaxDerivative = 7;

  GreenKernel(int order, BcTag family, PiecewisePoly2 pieces) : order_(order), family_(family), kernel_(std::move(pieces)) {
    for (int k = 0; k <= kMaxDerivative; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      lower_ds_[ku] = kernel_.lower.derivative_s(k);
      upper_ds_[ku] = kernel_.upper.derivative_s(k);
      lower_dense_[ku] = DensePoly2(lower_ds_[ku]);
      upper_dense_[ku] = DensePoly2(upper_ds_[ku]);
      left_[ku] = lower_ds_[ku].at_s(0);
      right_[ku] = upper_ds_[ku].at_s(1);
      jump_[ku] = upper_ds_[ku].on_diagonal() - lower_ds_[ku].on_diagonal();
    }
  }

  int order() const { return order_; }
  BcTag family() const { return family_; }
  double interval_length() const { return kernel_.interval_length; }
  const PiecewisePoly2& pieces() const { return kernel_; }

  /// Exact k-th s-derivative of the unit-interval piece (symbolic form).
  const Poly2& lower_derivative(int k) const { return lower_ds_.at(static_cast<std::size_t>(k)); }
  const Poly2& upper_derivative(int k) const { return upper_ds_.at(static_cast<std::size_t>(k)); }

  double operator()(double t, double s) const { return kernel_(t, s); }

  /// Fast evaluation without the domain check; selects the piece by s <= t.
  double value_unchecked(double t, double s) const {
    const double a = interval_length();
    const double v = s <= t ? lower_dense_[0](t / a, s / a) : upper_dense_[0](t / a, s / a);
    return scale(0) * v;
  }

  double s_derivative(int k, double t, double s, Side side) const {
    const double a = interval_length();
    if (!(t >= 0.0 && t <= a && s >= 0.0 && s <= a))
      throw Error(Errc::OutOfDomain, "kernel derivative evaluated outside [0,a]^2");
    if (k < 0 || k > kMaxDerivative)
      throw Error(Errc::DerivativeOrderTooHigh, "s-derivative order " + std::to_string(k) + " exceeds 7");
    const bool use_lower = s < t || (s == t && side == Side::Lower);
    const auto ku = static_cast<std::size_t>(k);
    const double v = use_lower ? lower_dense_[ku](t / a, s / a) : upper_dense_[ku](t / a, s / a);
    return scale(k) * v;
  }

  /// d^k G / ds^k at s = 0 (lower piece), as a function of t.
  double left_factor(int k, double t) const { return scale(k) * left_.at(static_cast<std::size_t>(k)).eval(t / interval_length()); }
  /// d^k G / ds^k at s = a (upper piece), as a function of t.
  double right_factor(int k, double t) const { return scale(k) * right_.at(static_cast<std::size_t>(k)).eval(t / interval_length()); }
  /// Jump upper - lower of d^k G / ds^k across s = t.
  double jump_factor(int k, double t) const { return scale(k) * jump_.at(static_cast<std::size_t>(k)).eval(t / interval_length()); }

  bool left_factor_vanishes(int k) const { return left_.at(static_cast<std::size_t>(k)).is_zero(); }
  bool right_factor_vanishes(int k) const { return right_.at(static_cast<std::size_t>(k)).is_zero(); }
  bool jump_vanishes(int k) const { return jump_.at(static_cast<std::size_t>(k)).is_zero(); }

  const Poly1& left_factor_poly(int k) const { return left_.at(static_cast<std::size_t>(k)); }
  const Poly1& right_factor_poly(int k) const { return right_.at(static_cast<std::size_t>(k)); }
  const Poly1& jump_poly(int k) const { return jump_.at(static_cast<std::size_t>(k)); }

  /// True when G(0, s) = 0 for all s; at t = 0 only the upper piece is live.
  bool vanishes_at_origin() const { return kernel_.upper.at_t(Rational(0)).is_zero(); }

 private:
  // s-derivatives of a^e G1(t/a, s/a) pick up a factor a^(e-k).
  double scale(int k) const {
    const double a = interval_length();
    return a == 1.0 ? 1.0 : std::pow(a, kernel_.homogeneity - k);
  }

  int order_;
  BcTag family_;
  PiecewisePoly2 kernel_;
  std::array<Poly2, kMaxDerivative + 1> lower_ds_;
  std::array<Poly2, kMaxDerivative + 1> upper_ds_;
  std::array<DensePoly2, kMaxDerivative + 1> lower_dense_;
  std::array<DensePoly2, kMaxDerivative + 1> upper_dense_;
  std::array<Poly1, kMaxDerivative + 1> left_;
  std::array<Poly1, kMaxDerivative + 1> right_;
  std::array<Poly1, kMaxDerivative + 1> jump_;
};

namespace detail {

// Closed forms on [0,1]. Each solves u^(m) = delta(t - s) with the family's
// homogeneous boundary conditions; lower is s <= t, upper is t <= s.
inline PiecewisePoly2 unit_kernel(BcTag tag) {
  const Poly2 t = Poly2::t();
  const Poly2 s = Poly2::s();
  const Poly2 half_square = (t - s) * (t - s) / 2;
  switch (tag) {
    case BcTag::ThirdA:
      return {s * (t * t - 2 * t + s) / 2, t * t * (s - 1) / 2};
    case BcTag::ThirdB:
      // Lower piece carries the factor s so that G(t,0) = 0.
      return {-(s * (1 - t) * (2 * t - t * s - s)) / 2, -(t * t * pow(1 - s, 2)) / 2};
    case BcTag::ThirdC: {
      const Poly2 upper = s * (1 - s) * t - (1 - s * s) * t * t / 2;
      return {upper + half_square, upper};
    }
    case BcTag::FourthClamped:
      return {s * s * pow(t - 1, 2) * (3 * t - s - 2 * t * s) / 6, t * t * pow(s - 1, 2) * (3 * s - t - 2 * t * s) / 6};
    case BcTag::Fifth: {
      const Poly2 bracket = 3 * s * s * t * t + 2 * s * s * t + s * s - 8 * s * t * t - 4 * s * t + 6 * t * t;
      return {s * s * pow(t - 1, 2) * bracket / 24, pow(s - 1, 3) * pow(t, 3) * (t - 4 * s + 3 * t * s) / 24};
    }
  }
  throw Error(Errc::UnsupportedFamily, "no kernel for family");
}

}  // namespace detail

/// Build the Green kernel of u^(order) = psi for a supported family on [0,a].
/// Only third_a accepts a != 1.
inline GreenKernel build_green_kernel(int order, BcTag family, double interval_length = 1.0) {
  if (equation_order(family) != order)
    throw Error(Errc::UnsupportedFamily, "family " + std::string(to_string(family)) + " does not apply to order " +
                                             std::to_string(order));
  if (!(interval_length > 0.0) || !std::isfinite(interval_length))
    throw Error(Errc::BadInterval, "interval length must be positive");
  if (family != BcTag::ThirdA && interval_length != 1.0)
    throw Error(Errc::BadInterval, std::string(to_string(family)) + " kernel is defined on [0,1] only");
  PiecewisePoly2 pieces = detail::unit_kernel(family);
  pieces.interval_length = interval_length;
  pieces.homogeneity = order - 1;
  return GreenKernel(order, family, std::move(pieces));
}

/// Polynomial g of degree m-1 carrying the inhomogeneous boundary values.
class BoundaryPoly {
 public:
  BoundaryPoly() = default;
  explicit BoundaryPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  const std::vector<double>& coeffs() const { return c_; }
  double operator()(double t) const { return horner(c_, t); }

  double derivative(double t, int k) const {
    double acc = 0.0;
    for (int i = static_cast<int>(c_.size()) - 1; i >= k; --i) {
      double f = c_[static_cast<std::size_t>(i)];
      for (int r = 0; r < k; ++r) f *= i - r;
      acc = acc * t + f;
    }
    return acc;
  }

 private:
  std::vector<double> c_;
};

/// Solve the m x m system of boundary functionals applied to 1, t, ..., t^(m-1).
inline BoundaryPoly build_boundary_poly(int order, const BcFamily& bc, double interval_length = 1.0) {
  if (equation_order(bc.tag) != order)
    throw Error(Errc::UnsupportedFamily, "family " + std::string(to_string(bc.tag)) + " does not apply to order " +
                                             std::to_string(order));
  const auto funcs = functionals(bc.tag);
  const int m = order;
  Eigen::MatrixXd system(m, m);
  Eigen::VectorXd rhs(m);
  for (int r = 0; r < m; ++r) {
    const auto& f = funcs[static_cast<std::size_t>(r)];
    const double x = f.at_right ? interval_length : 0.0;
    for (int e = 0; e < m; ++e) {
      double v = 0.0;
      if (e >= f.derivative) {
        v = 1.0;
        for (int q = 0; q < f.derivative; ++q) v *= e - q;
        v *= std::pow(x, e - f.derivative);
      }
      system(r, e) = v;
    }
    rhs(r) = bc.values[static_cast<std::size_t>(r)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) throw Error(Errc::SingularBcSystem, "boundary functionals are linearly dependent");
  const Eigen::VectorXd c = lu.solve(rhs);
  return BoundaryPoly(std::vector<double>(c.data(), c.data() + c.size()));
}

/// Apply a boundary functional to a polynomial with exact coefficients.
inline Rational apply_functional(const Poly1& u, const BoundaryFunctional& f) {
  return u.derivative(f.derivative)(Rational(f.at_right ? 1 : 0));
}

/// u(t) = integral_0^1 G(t,s) psi(s) ds for polynomial psi, integrated exactly
/// piece by piece on the unit interval.
inline Poly1 integrate_against(const PiecewisePoly2& kernel, const Poly1& psi) {
  const Poly2 psi2 = Poly2::in_s(psi);
  const Poly2 lower = (kernel.lower * psi2).antiderivative_s();
  const Poly2 upper = (kernel.upper * psi2).antiderivative_s();
  return (lower.on_diagonal() - lower.at_s(0)) + (upper.at_s(1) - upper.on_diagonal());
}

struct KernelCheck {
  double continuity_gap = 0.0;      // max |lower(t,t) - upper(t,t)| over samples
  bool residual_exact = false;      // u^(m) == psi symbolically for every probe
  bool boundary_exact = false;      // homogeneous boundary functionals vanish
  int probes = 0;
  bool ok() const { return continuity_gap <= 1e-13 && residual_exact && boundary_exact; }
};

/// Residual oracle: for each polynomial probe psi, u = int G psi must satisfy
/// u^(m) = psi and the family's homogeneous conditions, exactly.
inline KernelCheck check_kernel(const GreenKernel& kernel, const std::vector<Poly1>& probes) {
  KernelCheck out;
  const auto& pieces = kernel.pieces();
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    out.continuity_gap = std::max(out.continuity_gap, std::abs(pieces.lower.eval(t, t) - pieces.upper.eval(t, t)));
  }
  out.residual_exact = true;
  out.boundary_exact = true;
  for (const auto& psi : probes) {
    const Poly1 u = integrate_against(pieces, psi);
    if (!(u.derivative(kernel.order()) == psi)) out.residual_exact = false;
    for (const auto& f : functionals(kernel.family()))
      if (apply_functional(u, f) != Rational(0)) out.boundary_exact = false;
    ++out.probes;
  }
  return out;
}

/// Deterministic family of small-integer cubic probes for check_kernel.
inline std::vector<Poly1> default_kernel_probes(int count = 20) {
  std::vector<Poly1> probes;
  std::uint32_t state = 12345u;
  auto next = [&state] {
    state = state * 1664525u + 1013904223u;
    return static_cast<std::int64_t>((state >> 16) % 11) - 5;
  };
  probes.push_back(Poly1::constant(1));
  while (static_cast<int>(probes.size()) < count) {
    std::vector<Rational> c;
    for (int i = 0; i < 4; ++i) c.emplace_back(next(), static_cast<std::int64_t>(1 + (i % 3)));
    probes.emplace_back(std::move(c));
  }
  return probes;
}

}  // namespace fde
