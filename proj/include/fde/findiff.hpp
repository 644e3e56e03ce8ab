#pragma once

// Finite-difference weights on uniform grids. Stencils approximate the m-th
// derivative to O(h^k); weights are for unit spacing and get scaled by h^-m.

#include "fde/error.hpp"
#include "fde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace fde {

/// Fornberg's recurrence: weights w such that sum w_j f(x_j) ~ f^(m)(x0).
/// Works for arbitrary distinct (possibly fractional) offsets.
inline std::vector<double> fornberg_weights(std::span<const double> x, double x0, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  if (m < 0 || m > n) throw Error(Errc::GridTooSmall, "need more than " + std::to_string(m) + " nodes for derivative order " + std::to_string(m));
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      c2 *= c3;
      auto& ci = c[static_cast<std::size_t>(i)];
      auto& cj = c[static_cast<std::size_t>(j)];
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          ci[static_cast<std::size_t>(k)] = c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                                                  c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) / c2;
        ci[0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        cj[static_cast<std::size_t>(k)] = (c4 * cj[static_cast<std::size_t>(k)] - k * cj[static_cast<std::size_t>(k - 1)]) / c3;
      cj[0] = c4 * cj[0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) w[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
  return w;
}

struct StencilPosition {
  enum class Kind { Interior, LeftBoundary, RightBoundary };
  Kind kind = Kind::Interior;
  int offset = 0;  // boundary kinds: distance of the target node from that edge

  static StencilPosition interior() { return {Kind::Interior, 0}; }
  static StencilPosition left(int offset = 0) { return {Kind::LeftBoundary, offset}; }
  static StencilPosition right(int offset = 0) { return {Kind::RightBoundary, offset}; }
};

struct Stencil {
  int derivative_order = 0;
  int accuracy_order = 0;
  std::vector<int> offsets;
  std::vector<double> weights;

  int reach_left() const { return -offsets.front(); }
  int reach_right() const { return offsets.back(); }
};

/// Node counts: centred stencils use m+k-1 nodes (rounded up to odd),
/// one-sided stencils use m+k nodes starting at the grid edge.
inline int interior_node_count(int m, int k) {
  const int c = m + k - 1;
  return c % 2 == 0 ? c + 1 : c;
}
inline int boundary_node_count(int m, int k) { return m + k; }

inline Stencil make_stencil(int m, int k, StencilPosition position) {
  if (m < 1) throw Error(Errc::InvalidConfig, "derivative order must be >= 1");
  if (k < 2 || k % 2 != 0) throw Error(Errc::InvalidConfig, "accuracy order must be a positive even integer");
  Stencil st{m, k, {}, {}};
  switch (position.kind) {
    case StencilPosition::Kind::Interior: {
      const int half = interior_node_count(m, k) / 2;
      // An even count m+k-1 is widened to odd; the centre weight is then zero
      // for odd m and the node is dropped (e.g. [-1, 1] for the first derivative).
      for (int o = -half; o <= half; ++o) st.offsets.push_back(o);
      break;
    }
    case StencilPosition::Kind::LeftBoundary: {
      const int cnt = boundary_node_count(m, k);
      if (position.offset < 0 || position.offset >= cnt) throw Error(Errc::IndexOutOfRange, "boundary offset outside stencil");
      for (int o = 0; o < cnt; ++o) st.offsets.push_back(o - position.offset);
      break;
    }
    case StencilPosition::Kind::RightBoundary: {
      const int cnt = boundary_node_count(m, k);
      if (position.offset < 0 || position.offset >= cnt) throw Error(Errc::IndexOutOfRange, "boundary offset outside stencil");
      for (int o = cnt - 1; o >= 0; --o) st.offsets.push_back(position.offset - o);
      break;
    }
  }
  std::vector<double> x(st.offsets.begin(), st.offsets.end());
  st.weights = fornberg_weights(x, 0.0, m);
  if (position.kind == StencilPosition::Kind::Interior && (m + k - 1) % 2 == 0) {
    // Drop the exactly-zero centre weight of the widened odd-derivative stencil.
    const auto mid = st.offsets.size() / 2;
    if (std::abs(st.weights[mid]) < 1e-14) {
      st.offsets.erase(st.offsets.begin() + static_cast<std::ptrdiff_t>(mid));
      st.weights.erase(st.weights.begin() + static_cast<std::ptrdiff_t>(mid));
    }
  }
  return st;
}

/// Stencil for node `node` of a grid with n intervals: centred where it fits,
/// otherwise one-sided from the nearer edge.
inline Stencil stencil_for_node(int m, int k, int node, int n) {
  if (node < 0 || node > n) throw Error(Errc::IndexOutOfRange, "node " + std::to_string(node) + " outside grid");
  if (n + 1 < boundary_node_count(m, k))
    throw Error(Errc::GridTooSmall, "grid of " + std::to_string(n + 1) + " nodes cannot hold a " +
                                        std::to_string(boundary_node_count(m, k)) + "-node stencil");
  const int half = interior_node_count(m, k) / 2;
  if (node - half >= 0 && node + half <= n) return make_stencil(m, k, StencilPosition::interior());
  if (node - half < 0) return make_stencil(m, k, StencilPosition::left(node));
  return make_stencil(m, k, StencilPosition::right(n - node));
}

inline double apply_stencil(const Stencil& st, const GridFunction& psi, int node) {
  const int n = psi.grid.intervals();
  if (node + st.offsets.front() < 0 || node + st.offsets.back() > n)
    throw Error(Errc::IndexOutOfRange, "stencil at node " + std::to_string(node) + " leaves the grid");
  double acc = 0.0;
  for (std::size_t j = 0; j < st.offsets.size(); ++j)
    acc += st.weights[j] * psi.values[static_cast<std::size_t>(node + st.offsets[j])];
  return acc / std::pow(psi.grid.step(), st.derivative_order);
}

/// Linear functional over a contiguous block of nodes.
struct NodeWeights {
  int first = 0;
  std::vector<double> weights;
};

/// Weights for psi^(j)(x) at an arbitrary x in [0,a]. On a node this is the
/// node stencil (identity for j = 0); between nodes it is the j-th derivative
/// of the local interpolant of degree j+k-1 whose nodes straddle x.
inline NodeWeights derivative_weights(const UniformGrid& grid, double x, int j, int k) {
  const int n = grid.intervals();
  const double h = grid.step();
  const double r = x / h;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-9) {
    const int node = static_cast<int>(nearest);
    if (j == 0) return {node, {1.0}};
    const Stencil st = stencil_for_node(j, k, node, n);
    NodeWeights out{node + st.offsets.front(), std::vector<double>(static_cast<std::size_t>(st.offsets.back() - st.offsets.front() + 1), 0.0)};
    const double scale = std::pow(h, -j);
    for (std::size_t q = 0; q < st.offsets.size(); ++q)
      out.weights[static_cast<std::size_t>(st.offsets[q] - st.offsets.front())] = st.weights[q] * scale;
    return out;
  }
  const int degree = j + k - 1;
  if (degree > n) throw Error(Errc::GridTooSmall, "grid too small for an interpolant of degree " + std::to_string(degree));
  const int base = static_cast<int>(std::floor(r));
  const int start = std::clamp(base - degree / 2, 0, n - degree);
  std::vector<double> offs(static_cast<std::size_t>(degree + 1));
  for (int q = 0; q <= degree; ++q) offs[static_cast<std::size_t>(q)] = (start + q) - r;
  NodeWeights out{start, fornberg_weights(offs, 0.0, j)};
  const double scale = std::pow(h, -j);
  for (double& w : out.weights) w *= scale;
  return out;
}

}  // namespace fde
