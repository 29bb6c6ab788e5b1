#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>

#include "chernoff/errors.hpp"
#include "chernoff/matrix/exp.hpp"
#include "chernoff/matrix/family.hpp"

namespace chernoff::matrix {

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature; tol is an absolute tolerance.
inline double adaptive_quadrature(const std::function<double(double)>& f,
                                  double a, double b, double tol = 1e-13) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Reference evolution family U(s,t): integrates the matrix-valued
// final-value problem dU/dsigma = -A(sigma) U, U(t,t) = I, from sigma = t
// down to sigma = s with classical RK4 on `steps` uniform substeps.
inline Eigen::MatrixXd ode_evolution_oracle(const MatrixGeneratorFamily& family,
                                            double s, double t, int steps) {
  if (s > t)
    throw InvalidIntervalError("ode_evolution_oracle requires s <= t");
  if (steps < 1) throw InvalidCountError("ode_evolution_oracle requires steps >= 1");
  const Eigen::Index n = family.dim;
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  if (s == t) return u;

  const double h = (s - t) / double(steps);  // negative: integrate backwards
  const auto rhs = [&](double sigma, const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    return -family.at(sigma) * m;
  };
  for (int k = 0; k < steps; ++k) {
    const double sigma = t + h * double(k);
    const Eigen::MatrixXd k1 = rhs(sigma, u);
    const Eigen::MatrixXd k2 = rhs(sigma + 0.5 * h, u + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = rhs(sigma + 0.5 * h, u + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = rhs(sigma + h, u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

// Commuting-case closed form U(s,t) = exp( (int_s^t a(r) dr) * A0 ), with
// the scalar integral from adaptive quadrature.
inline Eigen::MatrixXd commuting_evolution_oracle(const CommutingFamilySpec& spec,
                                                  double s, double t) {
  if (s > t)
    throw InvalidIntervalError("commuting_evolution_oracle requires s <= t");
  const double integral = adaptive_quadrature(spec.profile, s, t, 1e-13);
  return matrix_exp(integral * spec.base);
}

}  // namespace chernoff::matrix
