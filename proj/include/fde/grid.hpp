#pragma once

#include "fde/error.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace fde {

/// Uniform grid t_i = i*h, i = 0..n, on [0, a].
class UniformGrid {
 public:
  static constexpr int kMinIntervals = 4;

  UniformGrid(int n, double interval_length = 1.0) : n_(n), a_(interval_length) {
    if (n < kMinIntervals) throw Error(Errc::GridTooSmall, "grid needs n >= 4, got " + std::to_string(n));
    if (!(interval_length > 0.0) || !std::isfinite(interval_length))
      throw Error(Errc::BadInterval, "interval length must be positive");
  }

  int intervals() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) + 1; }
  double length() const { return a_; }
  double step() const { return a_ / n_; }

  // The last node is pinned to a so that t_n == a exactly.
  double node(int i) const { return i == n_ ? a_ : i * step(); }

  std::vector<double> nodes() const {
    std::vector<double> t(size());
    for (int i = 0; i <= n_; ++i) t[static_cast<std::size_t>(i)] = node(i);
    return t;
  }

  bool operator==(const UniformGrid&) const = default;

 private:
  int n_;
  double a_;
};

/// Values of a scalar function at the grid nodes.
struct GridFunction {
  UniformGrid grid;
  std::vector<double> values;

  GridFunction(UniformGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw Error(Errc::IndexOutOfRange, "grid function has " + std::to_string(values.size()) + " values for " +
                                             std::to_string(grid.size()) + " nodes");
    for (double x : values)
      if (!std::isfinite(x)) throw Error(Errc::NonFiniteIterate, "grid function value is not finite");
  }

  template <class F>
  static GridFunction sample(UniformGrid g, F&& f) {
    std::vector<double> v(g.size());
    for (int i = 0; i <= g.intervals(); ++i) v[static_cast<std::size_t>(i)] = f(g.node(i));
    return {g, std::move(v)};
  }

  double operator[](std::size_t i) const { return values[i]; }
};

}  // namespace fde
