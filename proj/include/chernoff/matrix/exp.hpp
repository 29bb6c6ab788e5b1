#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "chernoff/errors.hpp"

namespace chernoff::matrix {

// exp(A) by scaling-and-squaring with a [13/13] Pade core (Higham 2005).
// Relative error well below 1e-12 for ||A|| <= 10.
inline Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw DimensionError("matrix_exp requires a square matrix");
  const Eigen::Index n = a.rows();
  if (!a.allFinite()) throw DimensionError("matrix_exp requires finite entries");

  constexpr double theta13 = 5.371920351148152;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int squarings = 0;
  if (norm > theta13)
    squarings = int(std::ceil(std::log2(norm / theta13)));
  const Eigen::MatrixXd as = a / std::ldexp(1.0, squarings);

  static constexpr double b[] = {
      6.4764752532480000e16, 3.2382376266240000e16, 7.7717703038976000e15,
      1.1873537964288000e15, 1.2906019526400000e14, 1.0559470521600000e13,
      6.7044257280000000e11, 3.3522128640000000e10, 1.3232419200000000e9,
      4.0840800000000000e7,  9.6096000000000000e5,  1.6380000000000000e4,
      1.8200000000000000e2,  1.0};

  const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = as * as;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;

  const Eigen::MatrixXd u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
            b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                            b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace chernoff::matrix
