#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "chernoff/errors.hpp"

namespace chernoff::matrix {

// One-parameter family of n x n generator matrices A(t); t -> A(t) is
// assumed C^1. Acts on states as x -> A(t) x.
struct MatrixGeneratorFamily {
  int dim = 0;
  std::function<Eigen::MatrixXd(double)> eval;

  Eigen::MatrixXd at(double t) const {
    Eigen::MatrixXd a = eval(t);
    if (a.rows() != dim || a.cols() != dim)
      throw DimensionError("generator family returned wrong dimension");
    if (!a.allFinite())
      throw DimensionError("generator family returned non-finite entries");
    return a;
  }

  Eigen::VectorXd operator()(double t, const Eigen::VectorXd& x) const {
    if (x.size() != dim)
      throw DimensionError("state dimension does not match generator family");
    return at(t) * x;
  }
};

// Largest eigenvalue of (A + A^T)/2; nonpositive log-norm means the frozen
// semigroups are contractions in the Euclidean norm.
inline double log_norm(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  return es.eigenvalues().maxCoeff();
}

inline double spectral_norm(const Eigen::MatrixXd& a) {
  return a.jacobiSvd().singularValues()(0);
}

// A(t) = a(t) * A0, so [A(t1), A(t2)] = 0 exactly for all t1, t2.
struct CommutingFamilySpec {
  Eigen::MatrixXd base;
  std::function<double(double)> profile;

  MatrixGeneratorFamily family() const {
    if (base.rows() != base.cols())
      throw DimensionError("commuting base matrix must be square");
    const Eigen::MatrixXd b = base;
    const auto a = profile;
    return MatrixGeneratorFamily{
        int(b.rows()), [b, a](double t) -> Eigen::MatrixXd { return a(t) * b; }};
  }
};

namespace presets {

// Rotation generators about the z and x axes; skew, norm 1, [K1,K2] != 0.
inline Eigen::Matrix3d rotation_generator_z() {
  Eigen::Matrix3d k;
  k << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return k;
}

inline Eigen::Matrix3d rotation_generator_x() {
  Eigen::Matrix3d k;
  k << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  return k;
}

// Non-commuting dissipative family A(t) = -I + 0.5 (cos t K1 + sin t K2).
// The symmetric part is -I for every t (the K's are skew), so the log-norm
// is -1 and every frozen exponential is a strict contraction.
inline MatrixGeneratorFamily dissipative3() {
  const Eigen::Matrix3d k1 = rotation_generator_z();
  const Eigen::Matrix3d k2 = rotation_generator_x();
  return MatrixGeneratorFamily{
      3, [k1, k2](double t) -> Eigen::MatrixXd {
        return -Eigen::Matrix3d::Identity() +
               0.5 * (std::cos(t) * k1 + std::sin(t) * k2);
      }};
}

// Fixed dissipative base for the commuting testbed: skew off-diagonal part,
// symmetric part diag(-1, -0.5, -0.2).
inline Eigen::Matrix3d dissipative_base3() {
  Eigen::Matrix3d a;
  a << -1.0, 0.7, 0.0,
       -0.7, -0.5, 0.3,
        0.0, -0.3, -0.2;
  return a;
}

inline CommutingFamilySpec commuting3(std::function<double(double)> profile) {
  return CommutingFamilySpec{dissipative_base3(), std::move(profile)};
}

// Scalar profiles used by the commuting experiments.
inline std::function<double(double)> profile_constant(double c) {
  return [c](double) { return c; };
}

inline std::function<double(double)> profile_ramp() {
  return [](double t) { return t; };
}

inline std::function<double(double)> profile_one_plus_t_sin_t() {
  return [](double t) { return 1.0 + t * std::sin(t); };
}

}  // namespace presets

}  // namespace chernoff::matrix
