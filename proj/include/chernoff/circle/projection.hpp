#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "chernoff/errors.hpp"

namespace chernoff::circle {

// Radius of the tubular neighborhood in which the nearest-point projection
// onto S^1 is unique (any value below the curvature radius 1 works).
inline constexpr double kTubeRadius = 0.5;

struct NormalDecomposition {
  Eigen::Vector2d tangential;  // u_M
  Eigen::Vector2d normal;      // u_perp = u - u_M
};

// Splits a small ambient displacement u at a point y on the circle into the
// chordal part u_M = P_M(y + u) - y and the rest u_perp, with P_M the radial
// projection x -> x/|x|. For u = h*v, h -> 0, u_perp/h tends to the
// orthogonal projection of v onto the normal line at y.
inline NormalDecomposition normal_decompose(const Eigen::Vector2d& u,
                                            const Eigen::Vector2d& y) {
  if (std::abs(y.norm() - 1.0) > 1e-9)
    throw OutsideTubeError("base point must lie on the circle");
  if (!(u.norm() < kTubeRadius))
    throw OutsideTubeError("displacement leaves the tubular neighborhood");
  const Eigen::Vector2d projected = (y + u).normalized();
  const Eigen::Vector2d u_m = projected - y;
  return NormalDecomposition{u_m, u - u_m};
}

}  // namespace chernoff::circle
