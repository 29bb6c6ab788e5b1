#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/fft.hpp"
#include "chernoff/circle/grid.hpp"
#include "chernoff/errors.hpp"

namespace chernoff::circle {

namespace detail {

// Drift term of the evolution in spectral space: fft(b(sigma, .) * v').
inline std::vector<std::complex<double>> drift_term(
    const std::vector<std::complex<double>>& spec, double sigma,
    const DriftPath& phi, const CircleGrid& grid) {
  const int n = grid.n;
  std::vector<std::complex<double>> deriv(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int k = (j <= n / 2) ? j : j - n;
    deriv[std::size_t(j)] = (j == n / 2)
                                ? std::complex<double>(0.0, 0.0)
                                : spec[std::size_t(j)] *
                                      std::complex<double>(0.0, double(k));
  }
  fft_inplace(deriv, /*inverse=*/true);
  for (int j = 0; j < n; ++j) {
    const double b = phi.chart_drift(sigma, grid.node(j));
    deriv[std::size_t(j)] *= b;
  }
  fft_inplace(deriv, /*inverse=*/false);
  return deriv;
}

}  // namespace detail

// Reference solver for the final-value problem du/dsigma = -A_sigma u,
// u(t, .) = g, with A_sigma = b(sigma,.) d_theta + (1/2) d_theta^2. The
// substitution sigma = t - tau gives a forward heat equation integrated by
// an integrating-factor RK4: the diffusion multiplier exp(-k^2 dtau / 2) is
// applied exactly, RK4 handles the drift term.
inline FunctionSamples spectral_reference(double s, double t, const DriftPath& phi,
                                          const FunctionSamples& g, int steps) {
  if (s > t) throw InvalidIntervalError("spectral_reference requires s <= t");
  if (steps < 1) throw InvalidCountError("spectral_reference requires steps >= 1");
  if (s == t) return g;
  phi.validate_time(s);
  phi.validate_time(t);

  const int n = g.grid.n;
  const double h = (t - s) / double(steps);

  // Exact diffusion factors over a half and a full substep.
  std::vector<double> e_half(static_cast<std::size_t>(n));
  std::vector<double> e_full(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int k = (j <= n / 2) ? j : j - n;
    const double lambda = -0.5 * double(k) * double(k);
    e_half[std::size_t(j)] = std::exp(lambda * 0.5 * h);
    e_full[std::size_t(j)] = std::exp(lambda * h);
  }

  auto spec = fft_forward(g.values.data(), std::size_t(n));
  for (int m = 0; m < steps; ++m) {
    const double tau = h * double(m);
    const double sig0 = t - tau;
    const double sig_half = t - (tau + 0.5 * h);
    const double sig1 = t - (tau + h);

    const auto a = detail::drift_term(spec, sig0, phi, g.grid);
    std::vector<std::complex<double>> stage(static_cast<std::size_t>(n));

    for (int j = 0; j < n; ++j)
      stage[std::size_t(j)] = e_half[std::size_t(j)] *
                              (spec[std::size_t(j)] + 0.5 * h * a[std::size_t(j)]);
    const auto b = detail::drift_term(stage, sig_half, phi, g.grid);

    for (int j = 0; j < n; ++j)
      stage[std::size_t(j)] = e_half[std::size_t(j)] * spec[std::size_t(j)] +
                              0.5 * h * b[std::size_t(j)];
    const auto c = detail::drift_term(stage, sig_half, phi, g.grid);

    for (int j = 0; j < n; ++j)
      stage[std::size_t(j)] = e_full[std::size_t(j)] * spec[std::size_t(j)] +
                              h * e_half[std::size_t(j)] * c[std::size_t(j)];
    const auto d = detail::drift_term(stage, sig1, phi, g.grid);

    for (int j = 0; j < n; ++j) {
      const auto sj = std::size_t(j);
      spec[sj] = e_full[sj] * spec[sj] +
                 (h / 6.0) * (e_full[sj] * a[sj] +
                              2.0 * e_half[sj] * (b[sj] + c[sj]) + d[sj]);
    }
  }

  fft_inplace(spec, /*inverse=*/true);
  Eigen::ArrayXd out(n);
  for (int j = 0; j < n; ++j) out[j] = spec[std::size_t(j)].real();
  return FunctionSamples(g.grid, std::move(out));
}

}  // namespace chernoff::circle
