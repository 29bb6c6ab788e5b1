#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/grid.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/evolution.hpp"
#include "chernoff/parallel.hpp"
#include "chernoff/partition.hpp"

namespace chernoff::circle {

// The Gaussian bandwidth sqrt(t2-t1) must be resolved by at least this many
// grid nodes or the quadrature normalization degrades.
inline constexpr double kMinNodesPerSigma = 4.0;

inline void require_kernel_resolution(const CircleGrid& grid, double dt) {
  const double nodes_per_sigma = std::sqrt(dt) * double(grid.n) / kTwoPi;
  if (nodes_per_sigma < kMinNodesPerSigma)
    throw ResolutionError(
        "kernel bandwidth sqrt(dt) = " + std::to_string(std::sqrt(dt)) +
        " under-resolved at N = " + std::to_string(grid.n) +
        "; increase N to at least " +
        std::to_string(int(std::ceil(kMinNodesPerSigma * kTwoPi / std::sqrt(dt)))));
}

// Drifted chordal-Gaussian transition density between grid nodes, row
// normalized against the quadrature weight:
//   entries(j,k) = exp(-|z_j - y_k - (phi(t1)-phi(t2))|^2 / (2(t2-t1))) / Z_j.
struct KernelMatrix {
  CircleGrid grid;
  double t1 = 0.0;
  double t2 = 0.0;
  Eigen::MatrixXd entries;  // row j: source node; column k: target node
};

inline KernelMatrix build_q_kernel(const CircleGrid& grid, double s, double t,
                                   const DriftPath& phi) {
  if (!(s < t)) throw InvalidIntervalError("build_q_kernel requires s < t");
  const double dt = t - s;
  require_kernel_resolution(grid, dt);

  const Eigen::Vector2d offset = phi.point(s) - phi.point(t);
  const int n = grid.n;
  const double w = grid.weight();

  std::vector<double> cx(static_cast<std::size_t>(n));
  std::vector<double> cy(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    cx[std::size_t(j)] = std::cos(grid.node(j));
    cy[std::size_t(j)] = std::sin(grid.node(j));
  }

  Eigen::MatrixXd entries(n, n);
  parallel_for(std::size_t(n), [&](std::size_t row) {
    const int j = int(row);
    double z = 0.0;
    for (int k = 0; k < n; ++k) {
      const double dx = cx[std::size_t(j)] - cx[std::size_t(k)] - offset.x();
      const double dy = cy[std::size_t(j)] - cy[std::size_t(k)] - offset.y();
      const double e = std::exp(-(dx * dx + dy * dy) / (2.0 * dt));
      entries(j, k) = e;
      z += e * w;
    }
    if (!(z > 1e-300))
      throw ResolutionError("kernel row normalizer underflowed; increase N");
    for (int k = 0; k < n; ++k) entries(j, k) /= z;
  });

  return KernelMatrix{grid, s, t, std::move(entries)};
}

// (Q f)_j = sum_k entries(j,k) f_k w_k; a quadrature-stochastic averaging,
// hence a sup-norm contraction up to round-off.
inline FunctionSamples apply_Q(const KernelMatrix& kernel, const FunctionSamples& f) {
  if (!(kernel.grid == f.grid)) throw DimensionError("kernel/sample grids do not match");
  Eigen::VectorXd out = kernel.entries * f.values.matrix();
  return FunctionSamples(f.grid, out.array() * f.grid.weight());
}

// Adapter exposing the kernel family through the generic propagator
// interface.
struct CircleKernelPropagator {
  CircleGrid grid;
  DriftPath path;

  FunctionSamples operator()(double t1, double t2, const FunctionSamples& f) const {
    return apply_Q(build_q_kernel(grid, t1, t2, path), f);
  }
};

// Chernoff product of the kernel family over a partition, applied to g:
// approximates x -> E[g(X_t(s,x))] as the mesh goes to zero.
inline FunctionSamples chernoff_transport(const Partition& p, const DriftPath& phi,
                                          const FunctionSamples& g) {
  phi.validate_time(p.front());
  phi.validate_time(p.back());
  return chernoff_apply(CircleKernelPropagator{g.grid, phi}, p, g);
}

}  // namespace chernoff::circle
