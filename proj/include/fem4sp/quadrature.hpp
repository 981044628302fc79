// Gauss-Legendre rules on [-1, 1] and [-1, 1]^2, plus cell and edge integration.
#ifndef FEM4SP_QUADRATURE_HPP
#define FEM4SP_QUADRATURE_HPP

#include "fem4sp/mesh.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fem4sp {

inline constexpr int kMaxGaussPoints = 16;
/// Per-axis point count used for element matrices, loads and error norms.
inline constexpr int kDefaultQuadOrder = 5;

template <typename Scalar>
struct GaussRule1D {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// p-point Gauss-Legendre rule by Newton iteration on P_p.
template <typename Scalar = double>
GaussRule1D<Scalar> gauss_legendre(int p) {
  if (p < 1 || p > kMaxGaussPoints) {
    throw std::invalid_argument("gauss_legendre: point count must lie in [1, 16]");
  }
  GaussRule1D<Scalar> rule;
  rule.nodes.resize(p);
  rule.weights.resize(p);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  // Returns (P_p(x), P_p'(x)) by the three-term recurrence.
  auto legendre = [p](Scalar x) {
    Scalar p0 = 1, p1 = x;
    for (int n = 2; n <= p; ++n) {
      const Scalar p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
      p0 = p1;
      p1 = p2;
    }
    return std::pair<Scalar, Scalar>(p1, p * (x * p1 - p0) / (x * x - 1));
  };
  for (int k = 0; k < (p + 1) / 2; ++k) {
    Scalar x = std::cos(pi * (k + Scalar(0.75)) / (p + Scalar(0.5)));
    for (int it = 0; it < 100; ++it) {
      const auto [value, slope] = legendre(x);
      const Scalar dx = value / slope;
      x -= dx;
      if (std::abs(dx) < Scalar(1e-16)) break;
    }
    const Scalar dp = legendre(x).second;
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[k] = -x;
    rule.nodes[p - 1 - k] = x;
    rule.weights[k] = w;
    rule.weights[p - 1 - k] = w;
  }
  if (p % 2 == 1) rule.nodes[p / 2] = 0;
  return rule;
}

/// Tensor-product rule on the reference square.
struct QuadRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int order = 0;

  std::size_t size() const { return points.size(); }
};

QuadRule gauss_rule(int p);

/// h1 h2 sum_k w_k f(x_k): integral of f over the physical cell.
template <typename F>
double integrate_on_cell(const QuadRule& rule, const CellGeometry& geom, F&& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    sum += rule.weights[k] * f(geom.map(rule.points[k]));
  }
  return geom.half_widths.x() * geom.half_widths.y() * sum;
}

/// Composite Gauss rule along the segment [a, b], split into 2^levels panels.
template <typename G>
double integrate_on_edge(const Point& a, const Point& b, G&& g, int p, int levels) {
  if (levels < 0) throw std::invalid_argument("integrate_on_edge: negative composite level");
  const GaussRule1D<double> rule = gauss_legendre<double>(p);
  const long panels = 1L << levels;
  const Point step = (b - a) / static_cast<double>(panels);
  const double jac = 0.5 * step.norm();
  double sum = 0.0;
  for (long k = 0; k < panels; ++k) {
    const Point mid = a + (static_cast<double>(k) + 0.5) * step;
    double panel = 0.0;
    for (int q = 0; q < p; ++q) panel += rule.weights[q] * g(Point(mid + 0.5 * rule.nodes[q] * step));
    sum += panel;
  }
  return jac * sum;
}

struct AdaptiveEdgeResult {
  double value;
  int levels;
};

/// Doubles the panel count until two successive composite values agree to
/// rel_tol (relative to the integral of |g|), capped at 2^max_levels panels.
template <typename G>
AdaptiveEdgeResult integrate_on_edge_adaptive(const Point& a, const Point& b, G&& g, int p = kDefaultQuadOrder,
                                              double rel_tol = 1e-10, int max_levels = 14) {
  double prev = integrate_on_edge(a, b, g, p, 0);
  for (int level = 1; level <= max_levels; ++level) {
    const double next = integrate_on_edge(a, b, g, p, level);
    const double scale = integrate_on_edge(a, b, [&](const Point& x) { return std::abs(g(x)); }, p, level);
    if (std::abs(next - prev) <= rel_tol * scale) return {next, level};
    prev = next;
  }
  return {prev, max_levels};
}

}  // namespace fem4sp

#endif  // FEM4SP_QUADRATURE_HPP
