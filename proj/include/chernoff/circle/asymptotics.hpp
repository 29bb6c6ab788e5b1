#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/grid.hpp"
#include "chernoff/circle/kernel.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/rate.hpp"

namespace chernoff::circle {

struct AsymptoticsResult {
  std::vector<double> dtaus;
  std::vector<double> averages;    // kernel average of g at y, per dtau
  std::vector<double> remainders;  // R(dtau)
  // Log-log fit of |R| vs dtau; absent when the remainders are all at the
  // round-off floor (e.g. constant g).
  std::optional<RateFit> fit;
};

// Short-time expansion probe of the drifted-Gaussian average around a node
// y: computes
//   R = (average - g(y) - (dphi, grad_M g(y)) - (dtau/2) g''(y)) / dtau,
// with dphi = phi(tau) - phi(tau - dtau). On the circle the manifold
// Laplacian of the expansion acts as -g'', which flips the sign of the
// second-order term relative to the geometer's convention.
inline AsymptoticsResult asymptotics_probe(const FunctionSamples& g, int y_idx,
                                           double tau, const DriftPath& phi,
                                           const std::vector<double>& dtaus) {
  const CircleGrid& grid = g.grid;
  if (grid.n < 512)
    throw ResolutionError("asymptotics_probe needs N >= 512");
  if (y_idx < 0 || y_idx >= grid.n)
    throw DimensionError("probe node index out of range");
  for (double dt : dtaus) {
    if (!(dt > 0.0)) throw InvalidStepError("asymptotics_probe requires dtau > 0");
    require_kernel_resolution(grid, dt);
  }

  const FunctionSamples g1 = spectral_derivative(g, 1);
  const FunctionSamples g2 = spectral_derivative(g, 2);
  const double theta_y = grid.node(y_idx);
  const Eigen::Vector2d y = embed(theta_y);
  const Eigen::Vector2d grad = g1.values[y_idx] * tangent(theta_y);
  const double gy = g.values[y_idx];
  const double gyy = g2.values[y_idx];

  AsymptoticsResult out;
  out.dtaus = dtaus;
  for (double dt : dtaus) {
    const Eigen::Vector2d dphi = phi.point(tau) - phi.point(tau - dt);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < grid.n; ++k) {
      const Eigen::Vector2d z = embed(grid.node(k));
      const Eigen::Vector2d diff = z - y - dphi;
      const double e = std::exp(-diff.squaredNorm() / (2.0 * dt));
      num += g.values[k] * e;
      den += e;
    }
    if (!(den > 1e-300))
      throw ResolutionError("asymptotics_probe normalizer underflowed; increase N");
    const double average = num / den;
    out.averages.push_back(average);
    out.remainders.push_back(
        (average - gy - dphi.dot(grad) - 0.5 * dt * gyy) / dt);
  }

  std::vector<RatePoint> records;
  for (std::size_t i = 0; i < dtaus.size(); ++i)
    records.push_back({dtaus[i], std::abs(out.remainders[i])});
  try {
    out.fit = fit_rate(records);
  } catch (const InsufficientDataError&) {
    out.fit = std::nullopt;
  }
  return out;
}

}  // namespace chernoff::circle
