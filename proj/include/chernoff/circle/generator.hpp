#pragma once

#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/grid.hpp"

namespace chernoff::circle {

// Generator of the drifted circle diffusion in the angle chart:
//   (A_s g)(theta) = b(s, theta) g'(theta) + (1/2) g''(theta),
// with b(s, theta) = phi'(s) . e_theta. The sum-of-squares form of the
// manifold Laplacian reduces to the plain second derivative on S^1.
inline FunctionSamples apply_generator(const FunctionSamples& g, double s,
                                       const DriftPath& phi) {
  phi.validate_time(s);
  const FunctionSamples g1 = spectral_derivative(g, 1);
  const FunctionSamples g2 = spectral_derivative(g, 2);
  Eigen::ArrayXd out(g.grid.n);
  for (int j = 0; j < g.grid.n; ++j)
    out[j] = phi.chart_drift(s, g.grid.node(j)) * g1.values[j] +
             0.5 * g2.values[j];
  return FunctionSamples(g.grid, std::move(out));
}

// Adapter exposing the generator through the generic one-parameter family
// interface.
struct CircleGeneratorFamily {
  DriftPath path;

  FunctionSamples operator()(double t, const FunctionSamples& g) const {
    return apply_generator(g, t, path);
  }
};

}  // namespace chernoff::circle
