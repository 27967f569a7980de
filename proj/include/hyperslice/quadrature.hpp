#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hyperslice/error.hpp"

namespace hyperslice {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [a, b], roots found by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(std::size_t n, double a = 0.0, double b = 1.0) {
  if (n == 0) throw Error(ErrorCode::InvalidQuadrature, "Gauss-Legendre rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  if (n == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = b - a;
    return rule;
  }
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

/// Gauss-Legendre panels on [0, 1] graded dyadically toward 0:
/// [0, 2^{1-p}], ..., [1/4, 1/2], [1/2, 1] with `nodes` points each.
inline QuadratureRule graded_gauss_legendre(std::size_t nodes, std::size_t panels) {
  if (panels == 0) throw Error(ErrorCode::InvalidQuadrature, "at least one panel is required");
  QuadratureRule rule;
  double hi = 1.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = (p + 1 == panels) ? 0.0 : hi / 2.0;
    const auto panel = gauss_legendre(nodes, lo, hi);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    hi = lo;
  }
  return rule;
}

/// Trapezoidal rule for periodic integrands on [0, 2 pi).
inline QuadratureRule periodic_trapezoid(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidQuadrature, "trapezoidal rule needs at least one node");
  QuadratureRule rule;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes.push_back(h * static_cast<double>(i));
    rule.weights.push_back(h);
  }
  return rule;
}

}  // namespace hyperslice
