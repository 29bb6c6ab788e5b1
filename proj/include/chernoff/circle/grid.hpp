#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "chernoff/circle/fft.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/philox.hpp"

namespace chernoff::circle {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform periodic grid theta_j = 2*pi*j/n with arc-length quadrature
// weight 2*pi/n; the discrete stand-in for (M, lambda_M).
struct CircleGrid {
  int n = 0;

  explicit CircleGrid(int n_) : n(n_) {
    if (n < 4 || n % 2 != 0)
      throw InvalidCountError("CircleGrid requires even n >= 4");
  }

  double node(int j) const { return kTwoPi * double(j) / double(n); }
  double weight() const { return kTwoPi / double(n); }

  friend bool operator==(const CircleGrid&, const CircleGrid&) = default;
};

// Isometric embedding S^1 -> R^2 and its unit tangent frame.
inline Eigen::Vector2d embed(double theta) {
  return Eigen::Vector2d(std::cos(theta), std::sin(theta));
}

inline Eigen::Vector2d tangent(double theta) {
  return Eigen::Vector2d(-std::sin(theta), std::cos(theta));
}

// Samples of a function on a CircleGrid; the state type of the circle
// instantiation, normed by the discrete sup norm.
struct FunctionSamples {
  CircleGrid grid;
  Eigen::ArrayXd values;

  FunctionSamples(CircleGrid g, Eigen::ArrayXd v)
      : grid(g), values(std::move(v)) {
    if (values.size() != grid.n)
      throw DimensionError("sample count does not match grid");
  }
};

inline void require_same_grid(const FunctionSamples& a, const FunctionSamples& b) {
  if (!(a.grid == b.grid)) throw DimensionError("grids do not match");
}

inline double state_norm(const FunctionSamples& f) {
  return f.values.abs().maxCoeff();
}

inline bool state_finite(const FunctionSamples& f) {
  return f.values.isFinite().all();
}

inline FunctionSamples operator+(const FunctionSamples& a, const FunctionSamples& b) {
  require_same_grid(a, b);
  return FunctionSamples(a.grid, a.values + b.values);
}

inline FunctionSamples operator-(const FunctionSamples& a, const FunctionSamples& b) {
  require_same_grid(a, b);
  return FunctionSamples(a.grid, a.values - b.values);
}

inline FunctionSamples operator*(const FunctionSamples& a, double c) {
  return FunctionSamples(a.grid, a.values * c);
}

inline FunctionSamples operator*(double c, const FunctionSamples& a) {
  return a * c;
}

template <typename Fn>
FunctionSamples sample(const CircleGrid& grid, Fn&& fn) {
  Eigen::ArrayXd v(grid.n);
  for (int j = 0; j < grid.n; ++j) v[j] = fn(grid.node(j));
  return FunctionSamples(grid, std::move(v));
}

inline FunctionSamples constant_samples(const CircleGrid& grid, double c) {
  return FunctionSamples(grid, Eigen::ArrayXd::Constant(grid.n, c));
}

// Fourier differentiation on the periodic grid: mode k picks up the factor
// (ik)^order; the Nyquist mode is zeroed for odd orders. Exact for
// trigonometric polynomials of degree < n/2.
inline FunctionSamples spectral_derivative(const FunctionSamples& f, int order) {
  if (order < 1) throw InvalidCountError("spectral_derivative requires order >= 1");
  if (order > 8)
    throw InvalidCountError("spectral_derivative of samples beyond order 8 is unreliable");
  const int n = f.grid.n;
  auto spec = fft_forward(f.values.data(), std::size_t(n));
  for (int j = 0; j < n; ++j) {
    const int k = (j <= n / 2) ? j : j - n;
    if (j == n / 2 && order % 2 == 1) {
      spec[std::size_t(j)] = 0.0;
      continue;
    }
    double mag = 1.0;
    for (int m = 0; m < order; ++m) mag *= double(k);
    std::complex<double> factor;
    switch (order % 4) {
      case 0: factor = {mag, 0.0}; break;
      case 1: factor = {0.0, mag}; break;
      case 2: factor = {-mag, 0.0}; break;
      default: factor = {0.0, -mag}; break;
    }
    spec[std::size_t(j)] *= factor;
  }
  fft_inplace(spec, /*inverse=*/true);
  Eigen::ArrayXd out(n);
  for (int j = 0; j < n; ++j) out[j] = spec[std::size_t(j)].real();
  return FunctionSamples(f.grid, std::move(out));
}

// Trigonometric interpolant of grid samples; exact at the nodes and for
// trigonometric polynomials of degree < n/2.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const FunctionSamples& f) {
    const int n = f.grid.n;
    const auto spec = fft_forward(f.values.data(), std::size_t(n));
    const double scale = 1.0 / double(n);
    mean_ = spec[0].real() * scale;
    cos_.resize(std::size_t(n / 2 - 1));
    sin_.resize(std::size_t(n / 2 - 1));
    for (int k = 1; k < n / 2; ++k) {
      cos_[std::size_t(k - 1)] = 2.0 * spec[std::size_t(k)].real() * scale;
      sin_[std::size_t(k - 1)] = -2.0 * spec[std::size_t(k)].imag() * scale;
    }
    nyquist_ = spec[std::size_t(n / 2)].real() * scale;
    half_n_ = n / 2;
  }

  double operator()(double theta) const {
    double acc = mean_;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const double k = double(i + 1);
      acc += cos_[i] * std::cos(k * theta) + sin_[i] * std::sin(k * theta);
    }
    acc += nyquist_ * std::cos(double(half_n_) * theta);
    return acc;
  }

 private:
  double mean_ = 0.0;
  double nyquist_ = 0.0;
  int half_n_ = 0;
  std::vector<double> cos_, sin_;
};

inline double trig_interp(const FunctionSamples& f, double theta) {
  return TrigInterpolant(f)(theta);
}

// Random smooth probe with unit sup norm: a low-mode trigonometric
// polynomial with 1/(1+k^2)-damped Gaussian coefficients.
struct FourierUnitProbe {
  CircleGrid grid;
  int max_mode = 4;

  FunctionSamples operator()(std::uint64_t key, std::uint64_t trial) const {
    Eigen::ArrayXd v = Eigen::ArrayXd::Zero(grid.n);
    for (int k = 0; k <= max_mode; ++k) {
      const double damp = 1.0 / (1.0 + double(k) * double(k));
      const double a = damp * philox_gaussian(key, trial, std::uint64_t(2 * k));
      const double b = damp * philox_gaussian(key, trial, std::uint64_t(2 * k + 1));
      for (int j = 0; j < grid.n; ++j) {
        const double th = grid.node(j);
        v[j] += a * std::cos(double(k) * th) + b * std::sin(double(k) * th);
      }
    }
    const double sup = v.abs().maxCoeff();
    if (sup < 1e-300) return constant_samples(grid, 1.0);
    return FunctionSamples(grid, v / sup);
  }
};

}  // namespace chernoff::circle
