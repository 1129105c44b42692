#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rfs {

/// Nodes and weights for an integral over the circle [0, 1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  auto integrate(F&& g) const {
    using R = decltype(g(0.0));
    R acc{};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      acc += weights[j] * g(nodes[j]);
    }
    return acc;
  }
};

/// Equal-weight Riemann sum of g over the uniform grid {k/n_points}.
/// On the periodic domain this coincides with the trapezoidal rule and is
/// spectrally accurate for smooth integrands.
inline double periodic_quadrature(const std::function<double(double)>& g,
                                  int n_points) {
  if (n_points < 2) {
    throw std::domain_error("periodic_quadrature: requires n_points >= 2");
  }
  double acc = 0.0;
  for (int k = 0; k < n_points; ++k) {
    acc += g(static_cast<double>(k) / n_points);
  }
  return acc / n_points;
}

/// Midpoint grid {(k+1/2)/n}; avoids evaluating at the endpoint t = 0 == 1,
/// where spectral densities may be singular.
inline QuadratureRule uniform_midpoint_rule(int n) {
  if (n < 1) {
    throw std::domain_error("uniform_midpoint_rule: requires n >= 1");
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, 1.0 / n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = (k + 0.5) / n;
  }
  return rule;
}

}  // namespace rfs
