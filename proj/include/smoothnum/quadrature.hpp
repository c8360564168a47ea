#pragma once

#include <vector>

namespace smoothnum {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed once per n and cached. Thread-safe.
const GaussRule& gauss_legendre(int n);

/// Integral of f over [a, b] with one n-point Gauss-Legendre panel.
template <typename T, typename F>
T gauss_panel(F&& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  double half = 0.5 * (b - a);
  double mid = 0.5 * (a + b);
  T acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

}  // namespace smoothnum
