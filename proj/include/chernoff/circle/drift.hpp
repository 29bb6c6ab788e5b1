#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chernoff/circle/grid.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/partition.hpp"

namespace chernoff::circle {

// C^2 angle path psi(t) defining the ambient drift path
// phi(t) = (cos psi(t), sin psi(t)) on the circle. Carries its own time
// domain; every evaluation validates against it.
struct DriftPath {
  std::string name = "custom";
  TimeInterval domain{0.0, 1.0};
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  std::function<double(double)> ddpsi;

  void validate_time(double t) const {
    const double slack = 1e-9 * (1.0 + std::abs(domain.s) + std::abs(domain.t));
    if (t < domain.s - slack || t > domain.t + slack)
      throw InvalidIntervalError("time " + std::to_string(t) +
                                 " outside drift-path domain [" +
                                 std::to_string(domain.s) + ", " +
                                 std::to_string(domain.t) + "]");
  }

  double angle(double t) const {
    validate_time(t);
    return psi(t);
  }

  Eigen::Vector2d point(double t) const { return embed(angle(t)); }

  // phi'(t) = psi'(t) * (-sin psi, cos psi)
  Eigen::Vector2d velocity(double t) const {
    validate_time(t);
    return dpsi(t) * tangent(psi(t));
  }

  Eigen::Vector2d acceleration(double t) const {
    validate_time(t);
    const double p = psi(t), dp = dpsi(t), ddp = ddpsi(t);
    return ddp * tangent(p) - dp * dp * embed(p);
  }

  // Chart drift b(t, theta) = phi'(t) . e_theta = psi'(t) cos(psi(t) - theta).
  double chart_drift(double t, double theta) const {
    validate_time(t);
    return dpsi(t) * std::cos(psi(t) - theta);
  }
};

inline DriftPath constant_path(double psi0, TimeInterval domain = {0.0, 1.0}) {
  return DriftPath{"constant(" + std::to_string(psi0) + ")", domain,
                   [psi0](double) { return psi0; }, [](double) { return 0.0; },
                   [](double) { return 0.0; }};
}

// psi(t) = c * t.
inline DriftPath linear_path(double c, TimeInterval domain = {0.0, 1.0}) {
  return DriftPath{"linear(" + std::to_string(c) + ")", domain,
                   [c](double t) { return c * t; }, [c](double) { return c; },
                   [](double) { return 0.0; }};
}

// psi(t) = a * sin(w t).
inline DriftPath sine_path(double a, double w, TimeInterval domain = {0.0, 1.0}) {
  return DriftPath{"sine(" + std::to_string(a) + "," + std::to_string(w) + ")",
                   domain,
                   [a, w](double t) { return a * std::sin(w * t); },
                   [a, w](double t) { return a * w * std::cos(w * t); },
                   [a, w](double t) { return -a * w * w * std::sin(w * t); }};
}

// psi(t) = sum_i coeffs[i] * t^i.
inline DriftPath poly_path(std::vector<double> coeffs,
                           TimeInterval domain = {0.0, 1.0}) {
  if (coeffs.empty()) throw ConfigError("poly_path needs at least one coefficient");
  auto horner = [](const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
  };
  std::vector<double> d1(coeffs.size() > 1 ? coeffs.size() - 1 : 1, 0.0);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d1[i - 1] = double(i) * coeffs[i];
  std::vector<double> d2(d1.size() > 1 ? d1.size() - 1 : 1, 0.0);
  for (std::size_t i = 1; i < d1.size(); ++i) d2[i - 1] = double(i) * d1[i];
  return DriftPath{"poly", domain,
                   [coeffs, horner](double t) { return horner(coeffs, t); },
                   [d1, horner](double t) { return horner(d1, t); },
                   [d2, horner](double t) { return horner(d2, t); }};
}

}  // namespace chernoff::circle
