#pragma once

// Exact rational polynomials in one variable (t) and two variables (t, s).
// Green kernels are stored in this form so that s-derivatives and diagonal
// jump data are computed symbolically rather than by differencing.

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace fde {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Univariate polynomial sum_i c[i] t^i with rational coefficients.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly1 constant(Rational v) { return Poly1({v}); }
  static Poly1 monomial(int degree, Rational coeff = 1) {
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
    c.back() = coeff;
    return Poly1(std::move(c));
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
  }

  Rational operator()(const Rational& t) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  double eval(double t) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
  }

  Poly1 derivative(int k = 1) const {
    std::vector<Rational> c = c_;
    for (int r = 0; r < k && !c.empty(); ++r) {
      for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<std::int64_t>(i);
      c.pop_back();
    }
    return Poly1(std::move(c));
  }

  Poly1 antiderivative() const {
    std::vector<Rational> c(c_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / static_cast<std::int64_t>(i + 1);
    return Poly1(std::move(c));
  }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly1(std::move(c));
  }
  friend Poly1 operator-(const Poly1& a, const Poly1& b) { return a + b * Rational(-1); }
  friend Poly1 operator*(const Poly1& a, const Rational& k) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= k;
    return Poly1(std::move(c));
  }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly1(std::move(c));
  }
  friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Rational(0)) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Bivariate polynomial sum_{i,j} c[i][j] t^i s^j with rational coefficients.
class Poly2 {
 public:
  Poly2() = default;
  static Poly2 constant(Rational v) {
    Poly2 p;
    p.set(0, 0, v);
    return p;
  }
  static Poly2 t() {
    Poly2 p;
    p.set(1, 0, 1);
    return p;
  }
  static Poly2 s() {
    Poly2 p;
    p.set(0, 1, 1);
    return p;
  }
  /// Lift a univariate polynomial in s.
  static Poly2 in_s(const Poly1& q) {
    Poly2 p;
    for (int j = 0; j <= q.degree(); ++j) p.set(0, j, q.coeff(j));
    return p;
  }

  int degree_t() const { return static_cast<int>(c_.size()) - 1; }
  int degree_s() const {
    int d = -1;
    for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
    return d;
  }
  bool is_zero() const { return c_.empty(); }

  Rational coeff(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    const auto& row = c_[static_cast<std::size_t>(i)];
    return j >= 0 && j < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(j)] : Rational(0);
  }

  void set(int i, int j, Rational v) {
    if (static_cast<int>(c_.size()) <= i) c_.resize(static_cast<std::size_t>(i) + 1);
    auto& row = c_[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) <= j) row.resize(static_cast<std::size_t>(j) + 1, Rational(0));
    row[static_cast<std::size_t>(j)] = v;
    trim();
  }

  double eval(double t, double s) const {
    double acc_t = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      double acc_s = 0.0;
      for (auto jt = it->rbegin(); jt != it->rend(); ++jt) acc_s = acc_s * s + to_double(*jt);
      acc_t = acc_t * t + acc_s;
    }
    return acc_t;
  }

  Poly2 derivative_s(int k = 1) const {
    Poly2 p;
    for (int i = 0; i <= degree_t(); ++i) {
      const auto& row = c_[static_cast<std::size_t>(i)];
      for (int j = k; j < static_cast<int>(row.size()); ++j) {
        Rational f = row[static_cast<std::size_t>(j)];
        for (int r = 0; r < k; ++r) f *= static_cast<std::int64_t>(j - r);
        p.set(i, j - k, p.coeff(i, j - k) + f);
      }
    }
    return p;
  }

  Poly2 derivative_t(int k = 1) const {
    Poly2 p;
    for (int i = k; i <= degree_t(); ++i) {
      const auto& row = c_[static_cast<std::size_t>(i)];
      for (int j = 0; j < static_cast<int>(row.size()); ++j) {
        Rational f = row[static_cast<std::size_t>(j)];
        for (int r = 0; r < k; ++r) f *= static_cast<std::int64_t>(i - r);
        p.set(i - k, j, p.coeff(i - k, j) + f);
      }
    }
    return p;
  }

  Poly2 antiderivative_s() const {
    Poly2 p;
    for (int i = 0; i <= degree_t(); ++i) {
      const auto& row = c_[static_cast<std::size_t>(i)];
      for (int j = 0; j < static_cast<int>(row.size()); ++j)
        p.set(i, j + 1, row[static_cast<std::size_t>(j)] / static_cast<std::int64_t>(j + 1));
    }
    return p;
  }

  /// Substitute s = value, leaving a polynomial in t.
  Poly1 at_s(const Rational& value) const {
    std::vector<Rational> out(c_.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      Rational acc(0);
      for (auto jt = c_[i].rbegin(); jt != c_[i].rend(); ++jt) acc = acc * value + *jt;
      out[i] = acc;
    }
    return Poly1(std::move(out));
  }

  /// Substitute t = value, leaving a polynomial in s.
  Poly1 at_t(const Rational& value) const {
    std::vector<Rational> out(static_cast<std::size_t>(std::max(degree_s() + 1, 0)), Rational(0));
    Rational power(1);
    for (const auto& row : c_) {
      for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * power;
      power *= value;
    }
    return Poly1(std::move(out));
  }

  /// Coefficients in s (ascending) of the polynomial with t fixed to a double.
  std::vector<double> at_t(double t) const {
    std::vector<double> out(static_cast<std::size_t>(std::max(degree_s() + 1, 0)), 0.0);
    double power = 1.0;
    for (const auto& row : c_) {
      for (std::size_t j = 0; j < row.size(); ++j) out[j] += to_double(row[j]) * power;
      power *= t;
    }
    return out;
  }

  /// Restriction to the diagonal s = t.
  Poly1 on_diagonal() const {
    std::vector<Rational> out(static_cast<std::size_t>(std::max(degree_t() + degree_s() + 1, 0)), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < c_[i].size(); ++j) out[i + j] += c_[i][j];
    return Poly1(std::move(out));
  }

  /// Swap the roles of t and s.
  Poly2 transposed() const {
    Poly2 p;
    for (int i = 0; i <= degree_t(); ++i)
      for (int j = 0; j < static_cast<int>(c_[static_cast<std::size_t>(i)].size()); ++j)
        p.set(j, i, coeff(i, j));
    return p;
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 p = a;
    for (int i = 0; i <= b.degree_t(); ++i)
      for (int j = 0; j < static_cast<int>(b.c_[static_cast<std::size_t>(i)].size()); ++j)
        p.set(i, j, p.coeff(i, j) + b.coeff(i, j));
    return p;
  }
  friend Poly2 operator*(const Poly2& a, const Rational& k) {
    Poly2 p;
    for (int i = 0; i <= a.degree_t(); ++i)
      for (int j = 0; j < static_cast<int>(a.c_[static_cast<std::size_t>(i)].size()); ++j)
        p.set(i, j, a.coeff(i, j) * k);
    return p;
  }
  friend Poly2 operator*(const Rational& k, const Poly2& a) { return a * k; }
  friend Poly2 operator*(std::int64_t k, const Poly2& a) { return a * Rational(k); }
  friend Poly2 operator/(const Poly2& a, std::int64_t k) { return a * Rational(1, k); }
  friend Poly2 operator-(const Poly2& a) { return a * Rational(-1); }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
  friend Poly2 operator+(const Poly2& a, std::int64_t k) { return a + constant(k); }
  friend Poly2 operator-(const Poly2& a, std::int64_t k) { return a + constant(-k); }
  friend Poly2 operator-(std::int64_t k, const Poly2& a) { return constant(k) - a; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (int i = 0; i <= a.degree_t(); ++i)
      for (int j = 0; j < static_cast<int>(a.c_[static_cast<std::size_t>(i)].size()); ++j) {
        const Rational x = a.coeff(i, j);
        if (x == Rational(0)) continue;
        for (int k = 0; k <= b.degree_t(); ++k)
          for (int l = 0; l < static_cast<int>(b.c_[static_cast<std::size_t>(k)].size()); ++l)
            p.set(i + k, j + l, p.coeff(i + k, j + l) + x * b.coeff(k, l));
      }
    return p;
  }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    for (auto& row : c_)
      while (!row.empty() && row.back() == Rational(0)) row.pop_back();
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
  }
  std::vector<std::vector<Rational>> c_;
};

inline Poly2 pow(const Poly2& p, int n) {
  Poly2 r = Poly2::constant(1);
  for (int i = 0; i < n; ++i) r = r * p;
  return r;
}

/// Double-precision copy of a Poly2 laid out for fast Horner evaluation.
class DensePoly2 {
 public:
  DensePoly2() = default;
  explicit DensePoly2(const Poly2& p)
      : nt_(p.degree_t() + 1), ns_(std::max(p.degree_s() + 1, 0)) {
    coef_.assign(static_cast<std::size_t>(nt_ * ns_), 0.0);
    for (int i = 0; i < nt_; ++i)
      for (int j = 0; j < ns_; ++j) coef_[static_cast<std::size_t>(i * ns_ + j)] = to_double(p.coeff(i, j));
  }

  double operator()(double t, double s) const {
    double acc_t = 0.0;
    for (int i = nt_ - 1; i >= 0; --i) {
      double acc_s = 0.0;
      const double* row = coef_.data() + static_cast<std::ptrdiff_t>(i) * ns_;
      for (int j = ns_ - 1; j >= 0; --j) acc_s = acc_s * s + row[j];
      acc_t = acc_t * t + acc_s;
    }
    return acc_t;
  }

 private:
  int nt_ = 0;
  int ns_ = 0;
  std::vector<double> coef_;
};

/// Evaluate an ascending-coefficient polynomial.
inline double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace fde
