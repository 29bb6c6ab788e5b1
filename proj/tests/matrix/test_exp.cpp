#include <catch2/catch_amalgamated.hpp>

#include <chernoff/matrix/exp.hpp>

#include <Eigen/Dense>
#include <cmath>

using chernoff::DimensionError;
using chernoff::matrix::matrix_exp;

TEST_CASE("exp(0) is the identity") {
  const Eigen::MatrixXd e = matrix_exp(Eigen::MatrixXd::Zero(4, 4));
  CHECK((e - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("diagonal matrices exponentiate entrywise") {
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  a(0, 0) = 1.0;
  a(1, 1) = -2.0;
  const Eigen::MatrixXd e = matrix_exp(a);
  CHECK(e(0, 0) == Catch::Approx(std::exp(1.0)).epsilon(1e-13));
  CHECK(e(1, 1) == Catch::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(std::abs(e(0, 1)) < 1e-15);
  CHECK(std::abs(e(1, 0)) < 1e-15);
}

TEST_CASE("rotation generators give rotation matrices") {
  Eigen::Matrix2d j;
  j << 0.0, 1.0, -1.0, 0.0;
  for (double t : {0.3, 1.0, 2.5, 8.0}) {
    const Eigen::MatrixXd e = matrix_exp(t * j);
    Eigen::Matrix2d want;
    want << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    CHECK((e - want).norm() < 1e-12);
  }
}

TEST_CASE("scaling-and-squaring stays consistent at larger norms") {
  Eigen::Matrix3d a;
  a << -2.0, 5.0, 1.0, -5.0, -1.0, 2.0, -1.0, -2.0, -3.0;
  const Eigen::MatrixXd whole = matrix_exp(a);
  const Eigen::MatrixXd half = matrix_exp(0.5 * a);
  CHECK((whole - half * half).norm() < 1e-12 * whole.norm());
}

TEST_CASE("matrix_exp rejects non-square input") {
  CHECK_THROWS_AS(matrix_exp(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
}
